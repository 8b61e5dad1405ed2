#pragma once

#include "adagio/point_cloud.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace adagio {

struct CenteringInfo {
  Vector mean;  // column means of the original data
};

// Comma-separated values, one point per row, optional single header line.
// If label_column is given that column is stripped into labels (values must
// be non-negative integers) and d excludes it. Ragged rows, non-numeric
// fields and non-finite values are rejected with row/column positions.
PointCloud load_csv(const std::string& path, bool has_header = false,
                    std::optional<int> label_column = std::nullopt);

// Serializes with full round-trip precision; reloading reproduces every entry
// bit-exactly. Labels, when present and requested, become the last column.
std::string csv_string(const PointCloud& cloud, bool with_labels = true);
void save_csv(const PointCloud& cloud, const std::string& path, bool with_labels = true);

// IDX as distributed with MNIST: big-endian magic 0x00000803, u32 count,
// rows, cols, then count*rows*cols unsigned bytes. Labels file: magic
// 0x00000801, u32 count, count bytes. Pixels are kept in [0, 255].
PointCloud load_idx(const std::string& images_path,
                    const std::optional<std::string>& labels_path = std::nullopt);

// Subtracts the column means. Second application is the identity (up to
// rounding); the returned CenteringInfo holds the original means.
std::pair<PointCloud, CenteringInfo> center(const PointCloud& cloud);

// m distinct rows chosen uniformly without replacement, deterministic given
// the seed. Labels are carried along.
PointCloud sample_points(const PointCloud& cloud, Eigen::Index m, std::uint64_t seed);

}  // namespace adagio
