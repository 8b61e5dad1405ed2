#pragma once

#include "adagio/point_cloud.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adagio {

// How evaluate() picks pairs: every unordered pair exactly once, or m
// distinct unordered pairs drawn without replacement, deterministic by seed.
struct PairSampling {
  bool all_pairs = true;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;

  static PairSampling all() { return {}; }
  static PairSampling sample(std::uint64_t m, std::uint64_t seed) {
    return {false, m, seed};
  }
};

// Distribution of pairwise distortions |dist_embedded/dist_original - 1|.
// The histogram has hist_bins fixed-width bins over [0, hist_max] followed by
// one overflow bin; counts sum to n_pairs_evaluated. Pairs coincident in the
// original space are skipped and counted separately (the ratio is undefined
// there).
struct DistortionReport {
  double max_distortion = 0.0;
  double mean_distortion = 0.0;
  std::vector<std::uint64_t> histogram;  // hist_bins entries + overflow at the back
  int hist_bins = 0;
  double hist_max = 0.0;
  std::uint64_t n_pairs_evaluated = 0;
  std::uint64_t n_zero_distance_pairs = 0;
  bool sampled = false;
  std::optional<std::uint64_t> sample_seed;
};

// |‖fx-fy‖ / ‖x-y‖ - 1| for one pair; rejects coincident originals.
double pair_distortion(const Vector& x, const Vector& y, const Vector& fx, const Vector& fy);

// The O(n^2 d) engine. Pairs are processed in fixed-size blocks that are
// independent of the thread count, and block results merge in block order, so
// max, mean and histogram are bit-identical under any parallelism degree.
// pairs_per_block tunes cache behaviour only, never the result of a given
// (mode, block size) configuration.
DistortionReport evaluate(const PointCloud& original, const PointCloud& embedded,
                          const PairSampling& mode, int hist_bins = 50, double hist_max = 1.0,
                          std::uint64_t pairs_per_block = 16384);

// Convenience wrapper: evaluate(all_pairs).max_distortion.
double max_distortion(const PointCloud& original, const PointCloud& embedded);

// All report fields as JSON.
nlohmann::json report_to_json(const DistortionReport& report);

// "bin_left,bin_right,count" rows for plotting; the overflow bin reads
// hist_max..inf.
std::string histogram_csv(const DistortionReport& report);

}  // namespace adagio
