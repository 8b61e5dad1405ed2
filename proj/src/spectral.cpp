#include "adagio/spectral.hpp"

#include "adagio/errors.hpp"
#include "adagio/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adagio {

namespace {

// Fixes the sign of each basis row so its largest-magnitude entry is
// positive. Makes exact/randomized comparisons and golden tests
// deterministic.
void normalize_row_signs(Matrix& rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Eigen::Index max_idx = 0;
    rows.row(i).cwiseAbs().maxCoeff(&max_idx);
    if (rows(i, max_idx) < 0.0) rows.row(i) = -rows.row(i);
  }
}

void require_finite(const PointCloud& cloud, const char* op) {
  if (!cloud.data.allFinite()) {
    throw NumericError(std::string(op) + ": input contains non-finite values");
  }
}

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

}  // namespace

std::pair<OrthonormalBasis, SpectralSummary> exact_top_svd(const PointCloud& cloud,
                                                           Eigen::Index s) {
  const Eigen::Index max_rank = std::min(cloud.n(), cloud.d());
  if (s < 1 || s > max_rank) {
    throw std::invalid_argument("exact_top_svd: s = " + std::to_string(s) +
                                " outside [1, " + std::to_string(max_rank) + "]");
  }
  require_finite(cloud, "exact_top_svd");

  const Eigen::MatrixXd data = cloud.data;  // BDCSVD wants column-major
  Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinV);

  OrthonormalBasis basis;
  basis.rows = svd.matrixV().leftCols(s).transpose();
  normalize_row_signs(basis.rows);

  SpectralSummary summary;
  summary.singular_values = svd.singularValues();
  summary.approximate = false;
  return {std::move(basis), std::move(summary)};
}

std::pair<OrthonormalBasis, SpectralSummary> randomized_top_svd(const PointCloud& cloud,
                                                                Eigen::Index s,
                                                                Eigen::Index oversampling,
                                                                int power_iters,
                                                                std::uint64_t seed) {
  const Eigen::Index max_rank = std::min(cloud.n(), cloud.d());
  if (s < 1 || oversampling < 0 || s + oversampling > max_rank) {
    throw std::invalid_argument("randomized_top_svd: need 1 <= s and s + oversampling <= " +
                                std::to_string(max_rank));
  }
  require_finite(cloud, "randomized_top_svd");

  const Eigen::Index width = s + oversampling;
  const Eigen::MatrixXd data = cloud.data;

  SeededRng rng(seed);
  Eigen::MatrixXd test(cloud.d(), width);
  for (Eigen::Index i = 0; i < test.rows(); ++i)
    for (Eigen::Index j = 0; j < test.cols(); ++j) test(i, j) = rng.normal();

  Eigen::MatrixXd range = thin_q(data * test);  // n x width
  for (int iter = 0; iter < power_iters; ++iter) {
    const Eigen::MatrixXd co_range = thin_q(data.transpose() * range);  // d x width
    range = thin_q(data * co_range);
  }

  const Eigen::MatrixXd projected = range.transpose() * data;  // width x d
  Eigen::BDCSVD<Eigen::MatrixXd> svd(projected, Eigen::ComputeThinV);

  OrthonormalBasis basis;
  basis.rows = svd.matrixV().leftCols(s).transpose();
  normalize_row_signs(basis.rows);

  SpectralSummary summary;
  summary.singular_values = svd.singularValues().head(s);
  summary.approximate = true;
  return {std::move(basis), std::move(summary)};
}

double stable_rank(const SpectralSummary& summary) {
  const double total = summary.singular_values.sum();
  const double energy = summary.singular_values.squaredNorm();
  if (!(energy > 0.0)) throw NumericError("stable_rank: all-zero spectrum");
  return total * total / energy;
}

double pca_pair_distortion_bound(double sigma_next, double pair_distance) {
  if (sigma_next < 0.0) {
    throw std::invalid_argument("pca_pair_distortion_bound: sigma_next must be >= 0");
  }
  if (!(pair_distance > 0.0)) {
    throw std::invalid_argument("pca_pair_distortion_bound: pair_distance must be > 0");
  }
  return std::min(2.0 * sigma_next / pair_distance, 1.0);
}

}  // namespace adagio
