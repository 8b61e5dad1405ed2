#pragma once

#include "adagio/point_cloud.hpp"
#include "adagio/rng.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace testutil {

inline adagio::PointCloud gaussian_cloud(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  adagio::SeededRng rng(seed);
  adagio::PointCloud cloud;
  cloud.data.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) cloud.data(i, j) = rng.normal();
  return cloud;
}

// Points lying exactly in a `rank`-dimensional coordinate-aligned-free
// subspace: random combinations of `rank` random directions.
inline adagio::PointCloud low_rank_cloud(Eigen::Index n, Eigen::Index d, Eigen::Index rank,
                                         std::uint64_t seed) {
  adagio::SeededRng rng(seed);
  adagio::Matrix directions(rank, d);
  for (Eigen::Index i = 0; i < rank; ++i)
    for (Eigen::Index j = 0; j < d; ++j) directions(i, j) = rng.normal();
  adagio::Matrix coefficients(n, rank);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) coefficients(i, j) = rng.normal();
  adagio::PointCloud cloud;
  cloud.data = coefficients * directions;
  return cloud;
}

// Gaussian columns scaled by a decaying profile; sigma_fraction of the total
// expected energy sits in the first `core` columns.
inline adagio::PointCloud split_energy_cloud(Eigen::Index n, Eigen::Index d, Eigen::Index core,
                                             double core_energy, std::uint64_t seed) {
  adagio::PointCloud cloud = gaussian_cloud(n, d, seed);
  const double core_scale = std::sqrt(core_energy / static_cast<double>(core));
  const double tail_scale = std::sqrt((1.0 - core_energy) / static_cast<double>(d - core));
  for (Eigen::Index j = 0; j < d; ++j) {
    cloud.data.col(j) *= j < core ? core_scale : tail_scale;
  }
  return cloud;
}

// Independent naive reference for the distortion engine: plain double loop,
// sequential long-double mean.
struct NaiveDistortion {
  double max = 0.0;
  double mean = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t zero_pairs = 0;
};

inline NaiveDistortion naive_distortion(const adagio::PointCloud& original,
                                        const adagio::PointCloud& embedded) {
  NaiveDistortion result;
  long double sum = 0.0L;
  for (Eigen::Index i = 0; i < original.n(); ++i) {
    for (Eigen::Index j = i + 1; j < original.n(); ++j) {
      const double orig = (original.data.row(i) - original.data.row(j)).norm();
      if (orig == 0.0) {
        ++result.zero_pairs;
        continue;
      }
      const double emb = (embedded.data.row(i) - embedded.data.row(j)).norm();
      const double value = std::abs(emb / orig - 1.0);
      result.max = std::max(result.max, value);
      sum += value;
      ++result.evaluated;
    }
  }
  result.mean = result.evaluated == 0 ? 0.0 : static_cast<double>(sum / result.evaluated);
  return result;
}

template <typename A, typename B>
bool exact_equal(const A& a, const B& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

// Unique scratch path under the system temp directory.
class TempDir {
 public:
  TempDir() {
    const auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0;; ++attempt) {
      path_ = base / ("adagio_test_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter_++) + "_" + std::to_string(attempt));
      std::error_code ec;
      if (std::filesystem::create_directory(path_, ec)) break;
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace testutil
