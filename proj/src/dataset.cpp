#include "adagio/dataset.hpp"

#include "adagio/errors.hpp"
#include "adagio/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string_view>
#include <vector>

namespace adagio {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
}

double parse_field(std::string_view field, std::size_t line_no, std::size_t col_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end || field.empty()) {
    throw IoError("csv: non-numeric field '" + std::string(field) + "' at row " +
                  std::to_string(line_no) + ", column " + std::to_string(col_no));
  }
  if (!std::isfinite(value)) {
    throw IoError("csv: non-finite value at row " + std::to_string(line_no) + ", column " +
                  std::to_string(col_no));
  }
  return value;
}

int parse_label(double value, std::size_t line_no, std::size_t col_no) {
  if (value < 0.0 || value != std::floor(value) ||
      value > static_cast<double>(std::numeric_limits<int>::max())) {
    throw IoError("csv: label must be a non-negative integer at row " + std::to_string(line_no) +
                  ", column " + std::to_string(col_no));
  }
  return static_cast<int>(value);
}

std::uint32_t read_be_u32(std::istream& in, const std::string& path) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) throw IoError("idx: truncated header in " + path);
  return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
         (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
}

}  // namespace

PointCloud load_csv(const std::string& path, bool has_header, std::optional<int> label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("csv: cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::string_view> fields;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_fields = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (has_header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    split_fields(line, fields);

    if (expected_fields == 0) {
      expected_fields = fields.size();
      if (label_column &&
          (*label_column < 0 || static_cast<std::size_t>(*label_column) >= expected_fields)) {
        throw IoError("csv: label column " + std::to_string(*label_column) +
                      " out of range for " + std::to_string(expected_fields) + " columns");
      }
    } else if (fields.size() != expected_fields) {
      throw IoError("csv: row " + std::to_string(line_no) + " has " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(expected_fields));
    }

    std::vector<double> row;
    row.reserve(expected_fields);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const double v = parse_field(fields[c], line_no, c + 1);
      if (label_column && static_cast<std::size_t>(*label_column) == c) {
        labels.push_back(parse_label(v, line_no, c + 1));
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw IoError("csv: no data rows in " + path);
  if (rows.front().empty()) throw IoError("csv: no feature columns in " + path);

  PointCloud cloud;
  cloud.data.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < cloud.n(); ++i)
    for (Eigen::Index j = 0; j < cloud.d(); ++j)
      cloud.data(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (label_column) cloud.labels = std::move(labels);
  return cloud;
}

std::string csv_string(const PointCloud& cloud, bool with_labels) {
  char buf[40];
  std::string out;
  out.reserve(static_cast<std::size_t>(cloud.n()) * static_cast<std::size_t>(cloud.d()) * 8);
  const bool emit_labels = with_labels && cloud.has_labels();
  for (Eigen::Index i = 0; i < cloud.n(); ++i) {
    for (Eigen::Index j = 0; j < cloud.d(); ++j) {
      if (j > 0) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", cloud.data(i, j));
      out += buf;
    }
    if (emit_labels) {
      out += ',';
      out += std::to_string((*cloud.labels)[static_cast<std::size_t>(i)]);
    }
    out += '\n';
  }
  return out;
}

void save_csv(const PointCloud& cloud, const std::string& path, bool with_labels) {
  std::ofstream out(path);
  if (!out) throw IoError("csv: cannot write " + path);
  out << csv_string(cloud, with_labels);
  if (!out) throw IoError("csv: write failed for " + path);
}

PointCloud load_idx(const std::string& images_path,
                    const std::optional<std::string>& labels_path) {
  std::ifstream in(images_path, std::ios::binary);
  if (!in) throw IoError("idx: cannot open " + images_path);

  const std::uint32_t magic = read_be_u32(in, images_path);
  if (magic != 0x00000803u) {
    throw IoError("idx: wrong magic in " + images_path + " (expected 0x00000803)");
  }
  const std::uint32_t count = read_be_u32(in, images_path);
  const std::uint32_t rows = read_be_u32(in, images_path);
  const std::uint32_t cols = read_be_u32(in, images_path);
  if (count == 0 || rows == 0 || cols == 0) {
    throw IoError("idx: empty image file " + images_path);
  }

  const std::size_t pixels = std::size_t{count} * rows * cols;
  std::vector<unsigned char> bytes(pixels);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(pixels));
  if (static_cast<std::size_t>(in.gcount()) != pixels) {
    throw IoError("idx: truncated image payload in " + images_path);
  }

  PointCloud cloud;
  cloud.data.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(rows) * cols);
  for (Eigen::Index i = 0; i < cloud.n(); ++i)
    for (Eigen::Index j = 0; j < cloud.d(); ++j)
      cloud.data(i, j) = static_cast<double>(
          bytes[static_cast<std::size_t>(i) * static_cast<std::size_t>(cloud.d()) +
                static_cast<std::size_t>(j)]);

  if (labels_path) {
    std::ifstream lin(*labels_path, std::ios::binary);
    if (!lin) throw IoError("idx: cannot open " + *labels_path);
    const std::uint32_t lmagic = read_be_u32(lin, *labels_path);
    if (lmagic != 0x00000801u) {
      throw IoError("idx: wrong magic in " + *labels_path + " (expected 0x00000801)");
    }
    const std::uint32_t lcount = read_be_u32(lin, *labels_path);
    if (lcount != count) {
      throw IoError("idx: image/label count mismatch (" + std::to_string(count) + " images, " +
                    std::to_string(lcount) + " labels)");
    }
    std::vector<unsigned char> lbytes(lcount);
    lin.read(reinterpret_cast<char*>(lbytes.data()), static_cast<std::streamsize>(lcount));
    if (static_cast<std::size_t>(lin.gcount()) != lcount) {
      throw IoError("idx: truncated label payload in " + *labels_path);
    }
    cloud.labels = std::vector<int>(lbytes.begin(), lbytes.end());
  }
  return cloud;
}

std::pair<PointCloud, CenteringInfo> center(const PointCloud& cloud) {
  CenteringInfo info;
  info.mean = cloud.data.colwise().mean().transpose();
  PointCloud centered;
  centered.data = cloud.data.rowwise() - info.mean.transpose();
  centered.labels = cloud.labels;
  return {std::move(centered), std::move(info)};
}

PointCloud sample_points(const PointCloud& cloud, Eigen::Index m, std::uint64_t seed) {
  if (m < 1 || m > cloud.n()) {
    throw std::invalid_argument("sample_points: m = " + std::to_string(m) +
                                " outside [1, " + std::to_string(cloud.n()) + "]");
  }
  std::vector<Eigen::Index> index(static_cast<std::size_t>(cloud.n()));
  std::iota(index.begin(), index.end(), Eigen::Index{0});

  SeededRng rng(seed);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto offset = static_cast<Eigen::Index>(
        rng.below(static_cast<std::uint64_t>(cloud.n() - i)));
    std::swap(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(i + offset)]);
  }

  PointCloud out;
  out.data.resize(m, cloud.d());
  std::vector<int> labels;
  if (cloud.has_labels()) labels.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index src = index[static_cast<std::size_t>(i)];
    out.data.row(i) = cloud.data.row(src);
    if (cloud.has_labels()) labels.push_back((*cloud.labels)[static_cast<std::size_t>(src)]);
  }
  if (cloud.has_labels()) out.labels = std::move(labels);
  return out;
}

}  // namespace adagio
