#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace adagio {

// Row-major throughout: one point per row, rows stream contiguously through
// the pairwise-distance kernels.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// A cloud of n points in d dimensions with optional integer class labels.
// Immutable by convention after construction; safe to share across threads.
struct PointCloud {
  Matrix data;  // n x d
  std::optional<std::vector<int>> labels;  // size n when present

  Eigen::Index n() const { return data.rows(); }
  Eigen::Index d() const { return data.cols(); }
  bool has_labels() const { return labels.has_value(); }
};

}  // namespace adagio
