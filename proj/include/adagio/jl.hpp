#pragma once

#include "adagio/point_cloud.hpp"

#include <cstddef>
#include <cstdint>

namespace adagio {

// Dense Rademacher sketching matrix: every entry is +1/sqrt(k) or -1/sqrt(k).
struct JlMatrix {
  Matrix entries;  // k x d
  std::uint64_t seed = 0;

  Eigen::Index k() const { return entries.rows(); }
  Eigen::Index d() const { return entries.cols(); }
};

// Samples a k x d Rademacher matrix. Entry (i, j) depends only on
// (seed, i, j) via a counter-based hash, so the fill order (and any block
// partitioning) never changes the result.
JlMatrix sample_jl(Eigen::Index k, Eigen::Index d, std::uint64_t seed);

// Target dimension sufficient for max pairwise distortion <= epsilon with
// failure probability gamma, via the union bound over all n^2 ordered pairs:
//   k = ceil(4 * ln(n^2 / gamma) / (epsilon^2/2 - epsilon^3/3)).
// Conservative by construction; experiments typically pass k directly.
std::size_t jl_dimension(std::size_t n_points, double epsilon, double gamma);

}  // namespace adagio
