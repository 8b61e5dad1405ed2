#pragma once

#include "adagio/point_cloud.hpp"

#include <cstdint>
#include <utility>

namespace adagio {

// s orthonormal rows in the ambient space: rows * rows^T = I within 1e-8.
// rows^T * rows projects onto the spanned subspace.
struct OrthonormalBasis {
  Matrix rows;  // s x d

  Eigen::Index s() const { return rows.rows(); }
  Eigen::Index d() const { return rows.cols(); }
};

// Singular values of the centered data matrix, descending. The randomized
// backend produces truncated, approximate values and marks them as such.
struct SpectralSummary {
  Vector singular_values;
  bool approximate = false;
};

// Top-s right-singular basis of the n x d data matrix (projection onto it is
// the PCA projection). The summary holds all min(n, d) singular values.
// Rows are sign-normalized so their largest-magnitude entry is positive.
std::pair<OrthonormalBasis, SpectralSummary> exact_top_svd(const PointCloud& cloud,
                                                           Eigen::Index s);

// Halko-style randomized truncated SVD: Gaussian range finder of width
// s + oversampling, power_iters subspace iterations with re-orthonormalization
// each pass, then an exact SVD of the small projected matrix. The summary
// holds s approximate singular values, descending.
std::pair<OrthonormalBasis, SpectralSummary> randomized_top_svd(const PointCloud& cloud,
                                                                Eigen::Index s,
                                                                Eigen::Index oversampling = 10,
                                                                int power_iters = 2,
                                                                std::uint64_t seed = 0);

// (sum sigma)^2 / sum sigma^2, in [1, number of nonzero values]. Note this
// follows the convention used by our diagnostics, not the more common
// ||A||_F^2 / ||A||_2^2.
double stable_rank(const SpectralSummary& summary);

// Worst-case PCA distortion for one pair: min(2 * sigma_next / pair_distance, 1),
// where sigma_next is the first singular value beyond the kept rank.
double pca_pair_distortion_bound(double sigma_next, double pair_distance);

}  // namespace adagio
