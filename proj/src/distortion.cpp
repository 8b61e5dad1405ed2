#include "adagio/distortion.hpp"

#include "adagio/parallel.hpp"
#include "adagio/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace adagio {

namespace {

// Neumaier-compensated accumulator; merging happens in fixed block order so
// sums are independent of the thread count.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  double total() const { return sum + compensation; }
};

struct BlockStats {
  double max = 0.0;
  CompensatedSum sum;
  std::uint64_t evaluated = 0;
  std::uint64_t zero_pairs = 0;
  std::vector<std::uint64_t> histogram;
};

// Inverts the lexicographic linear index over unordered pairs (i < j) of n
// items: row i owns indices [i(2n-i-1)/2, (i+1)(2n-i-2)/2).
void decode_pair(std::uint64_t p, std::uint64_t n, std::uint64_t& i, std::uint64_t& j) {
  const double nn = static_cast<double>(n);
  double guess = std::floor((2.0 * nn - 1.0 - std::sqrt((2.0 * nn - 1.0) * (2.0 * nn - 1.0) -
                                                        8.0 * static_cast<double>(p))) /
                            2.0);
  if (guess < 0.0) guess = 0.0;
  i = static_cast<std::uint64_t>(guess);
  auto row_start = [n](std::uint64_t r) { return r * (2 * n - r - 1) / 2; };
  while (i > 0 && row_start(i) > p) --i;
  while (row_start(i + 1) <= p) ++i;
  j = i + 1 + (p - row_start(i));
}

double pair_value(const PointCloud& original, const PointCloud& embedded, Eigen::Index i,
                  Eigen::Index j, bool& zero) {
  const Eigen::Index d = original.d();
  const Eigen::Index r = embedded.d();
  Eigen::Map<const Eigen::RowVectorXd> xi(original.data.row(i).data(), d);
  Eigen::Map<const Eigen::RowVectorXd> xj(original.data.row(j).data(), d);
  const double orig_sq = (xi - xj).squaredNorm();
  if (orig_sq == 0.0) {
    zero = true;
    return 0.0;
  }
  zero = false;
  Eigen::Map<const Eigen::RowVectorXd> fi(embedded.data.row(i).data(), r);
  Eigen::Map<const Eigen::RowVectorXd> fj(embedded.data.row(j).data(), r);
  const double emb_sq = (fi - fj).squaredNorm();
  return std::abs(std::sqrt(emb_sq) / std::sqrt(orig_sq) - 1.0);
}

void record(BlockStats& stats, double value, int hist_bins, double hist_max) {
  stats.max = std::max(stats.max, value);
  stats.sum.add(value);
  ++stats.evaluated;
  if (value >= hist_max) {
    ++stats.histogram[static_cast<std::size_t>(hist_bins)];
  } else {
    auto bin = static_cast<std::size_t>(value / hist_max * hist_bins);
    bin = std::min(bin, static_cast<std::size_t>(hist_bins - 1));
    ++stats.histogram[bin];
  }
}

std::vector<std::uint64_t> sample_pair_indices(std::uint64_t total, std::uint64_t m,
                                               std::uint64_t seed) {
  // Floyd's algorithm: m distinct values in [0, total), O(m) draws.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  SeededRng rng(seed);
  for (std::uint64_t t = total - m; t < total; ++t) {
    const std::uint64_t v = rng.below(t + 1);
    if (!chosen.insert(v).second) chosen.insert(t);
  }
  std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace

double pair_distortion(const Vector& x, const Vector& y, const Vector& fx, const Vector& fy) {
  const double orig = (x - y).norm();
  if (orig == 0.0) throw std::invalid_argument("pair_distortion: coincident points");
  return std::abs((fx - fy).norm() / orig - 1.0);
}

DistortionReport evaluate(const PointCloud& original, const PointCloud& embedded,
                          const PairSampling& mode, int hist_bins, double hist_max,
                          std::uint64_t pairs_per_block) {
  if (original.n() != embedded.n()) {
    throw std::invalid_argument("evaluate: cloud sizes differ (" + std::to_string(original.n()) +
                                " vs " + std::to_string(embedded.n()) + ")");
  }
  if (hist_bins < 1 || !(hist_max > 0.0)) {
    throw std::invalid_argument("evaluate: need hist_bins >= 1 and hist_max > 0");
  }
  if (pairs_per_block == 0) pairs_per_block = 1;

  const auto n = static_cast<std::uint64_t>(original.n());
  const std::uint64_t total_pairs = n * (n - 1) / 2;

  std::vector<std::uint64_t> sampled_indices;
  std::uint64_t work_count = total_pairs;
  if (!mode.all_pairs) {
    if (mode.m < 1 || mode.m > total_pairs) {
      throw std::invalid_argument("evaluate: sample size " + std::to_string(mode.m) +
                                  " outside [1, " + std::to_string(total_pairs) + "]");
    }
    sampled_indices = sample_pair_indices(total_pairs, mode.m, mode.seed);
    work_count = mode.m;
  }

  const std::uint64_t n_blocks =
      work_count == 0 ? 0 : (work_count + pairs_per_block - 1) / pairs_per_block;
  std::vector<BlockStats> blocks(static_cast<std::size_t>(n_blocks));

  parallel_chunks(static_cast<std::size_t>(n_blocks), [&](std::size_t b) {
    BlockStats& stats = blocks[b];
    stats.histogram.assign(static_cast<std::size_t>(hist_bins) + 1, 0);
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * pairs_per_block;
    const std::uint64_t end = std::min(begin + pairs_per_block, work_count);

    std::uint64_t i = 0, j = 0;
    if (mode.all_pairs && begin < end) decode_pair(begin, n, i, j);
    for (std::uint64_t p = begin; p < end; ++p) {
      if (!mode.all_pairs) {
        decode_pair(sampled_indices[static_cast<std::size_t>(p)], n, i, j);
      } else if (p != begin) {
        if (++j >= n) {
          ++i;
          j = i + 1;
        }
      }
      bool zero = false;
      const double value = pair_value(original, embedded, static_cast<Eigen::Index>(i),
                                      static_cast<Eigen::Index>(j), zero);
      if (zero) {
        ++stats.zero_pairs;
      } else {
        record(stats, value, hist_bins, hist_max);
      }
    }
  });

  DistortionReport report;
  report.hist_bins = hist_bins;
  report.hist_max = hist_max;
  report.histogram.assign(static_cast<std::size_t>(hist_bins) + 1, 0);
  report.sampled = !mode.all_pairs;
  if (!mode.all_pairs) report.sample_seed = mode.seed;

  CompensatedSum total;
  for (const BlockStats& stats : blocks) {
    report.max_distortion = std::max(report.max_distortion, stats.max);
    total.add(stats.sum.total());
    report.n_pairs_evaluated += stats.evaluated;
    report.n_zero_distance_pairs += stats.zero_pairs;
    for (std::size_t bin = 0; bin < report.histogram.size(); ++bin) {
      report.histogram[bin] += stats.histogram[bin];
    }
  }
  report.mean_distortion =
      report.n_pairs_evaluated == 0 ? 0.0
                                    : total.total() / static_cast<double>(report.n_pairs_evaluated);
  return report;
}

double max_distortion(const PointCloud& original, const PointCloud& embedded) {
  return evaluate(original, embedded, PairSampling::all()).max_distortion;
}

nlohmann::json report_to_json(const DistortionReport& report) {
  nlohmann::json j{
      {"max_distortion", report.max_distortion},
      {"mean_distortion", report.mean_distortion},
      {"hist_bins", report.hist_bins},
      {"hist_max", report.hist_max},
      {"histogram", report.histogram},
      {"n_pairs_evaluated", report.n_pairs_evaluated},
      {"n_zero_distance_pairs", report.n_zero_distance_pairs},
      {"sampled", report.sampled},
  };
  if (report.sample_seed) {
    j["sample_seed"] = *report.sample_seed;
  } else {
    j["sample_seed"] = nullptr;
  }
  return j;
}

std::string histogram_csv(const DistortionReport& report) {
  std::string out = "bin_left,bin_right,count\n";
  char buf[96];
  const double width = report.hist_max / report.hist_bins;
  for (int b = 0; b < report.hist_bins; ++b) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%llu\n", b * width, (b + 1) * width,
                  static_cast<unsigned long long>(report.histogram[static_cast<std::size_t>(b)]));
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g,inf,%llu\n", report.hist_max,
                static_cast<unsigned long long>(report.histogram.back()));
  out += buf;
  return out;
}

}  // namespace adagio
