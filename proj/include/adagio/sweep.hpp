#pragma once

#include "adagio/distortion.hpp"
#include "adagio/point_cloud.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace adagio {

enum class Method { adagio_exact, adagio_randomized, pca, jl, external };

const char* method_name(Method method);
Method method_from_name(const std::string& name);

// One cell of a dimension-distortion sweep. fit_seconds covers model
// construction only; eval_seconds covers transform plus distortion
// evaluation.
struct SweepRow {
  Method method = Method::pca;
  Eigen::Index target_dim = 0;
  std::uint64_t seed = 0;
  double max_distortion = 0.0;
  double fit_seconds = 0.0;
  double eval_seconds = 0.0;
};

// One row per (method, dim, seed). pca projects onto the top-r principal
// basis (seed-independent); jl uses a fresh Rademacher matrix per seed;
// adagio rows fit the combined map. Method external evaluates a caller-
// supplied r x d map once per seed, ignoring the dims list.
std::vector<SweepRow> tradeoff(const PointCloud& cloud, const std::vector<Eigen::Index>& dims,
                               const std::vector<Method>& methods,
                               const std::vector<std::uint64_t>& seeds,
                               const PairSampling& eval_mode = PairSampling::all(),
                               const Matrix* external_map = nullptr);

struct MinDimResult {
  Eigen::Index target_dim = 0;
  double achieved_distortion = 0.0;
  bool achieved = false;  // false when even r_max misses delta
  bool monotone = true;   // false if the probed curve was not non-increasing
};

// Smallest r in [r_min, r_max] whose fitted map (fixed seed) reaches max
// distortion <= delta. Exponential probing then bisection, under the
// declared monotone-in-expectation assumption; randomized methods run on a
// single fixed seed so the probed curve is deterministic.
MinDimResult min_dim_for_distortion(const PointCloud& cloud, Method method, double delta,
                                    std::uint64_t seed, Eigen::Index r_min, Eigen::Index r_max);

// CSV with header method,target_dim,seed,max_distortion,fit_seconds,eval_seconds.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace adagio
