#include "adagio/embed.hpp"

#include "adagio/dataset.hpp"
#include "adagio/errors.hpp"
#include "adagio/parallel.hpp"
#include "adagio/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace adagio {

namespace {

constexpr char kModelMagic[4] = {'A', 'D', 'G', '1'};
constexpr std::uint32_t kModelVersion = 1;

// Top-s right-singular rows of the centered data. When s exceeds min(n, d)
// the thin SVD runs out of directions, so the remaining rows come from the
// full V factor (orthonormal extensions with zero singular value).
OrthonormalBasis principal_basis(const PointCloud& centered, Eigen::Index s,
                                 SpectralBackend backend, std::uint64_t seed) {
  if (s == 0) {
    OrthonormalBasis empty;
    empty.rows.resize(0, centered.d());
    return empty;
  }
  const Eigen::Index max_rank = std::min(centered.n(), centered.d());
  if (s <= max_rank) {
    if (backend == SpectralBackend::randomized) {
      const Eigen::Index oversampling = std::min<Eigen::Index>(10, max_rank - s);
      return randomized_top_svd(centered, s, oversampling, 2, derive_seed(seed, "spectral"))
          .first;
    }
    return exact_top_svd(centered, s).first;
  }

  const Eigen::MatrixXd data = centered.data;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeFullV);
  OrthonormalBasis basis;
  basis.rows = svd.matrixV().leftCols(s).transpose();
  for (Eigen::Index i = 0; i < basis.rows.rows(); ++i) {
    Eigen::Index max_idx = 0;
    basis.rows.row(i).cwiseAbs().maxCoeff(&max_idx);
    if (basis.rows(i, max_idx) < 0.0) basis.rows.row(i) = -basis.rows.row(i);
  }
  return basis;
}

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void write_doubles(std::ostream& out, const double* values, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &values[i], sizeof(bits));
    write_u64(out, bits);
  }
}

std::uint32_t read_u32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw IoError("model: truncated file " + path);
  return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) |
         (std::uint32_t{b[3]} << 24);
}

std::uint64_t read_u64(std::istream& in, const std::string& path) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw IoError("model: truncated file " + path);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return v;
}

void read_doubles(std::istream& in, double* values, std::size_t count, const std::string& path) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t bits = read_u64(in, path);
    std::memcpy(&values[i], &bits, sizeof(double));
  }
}

}  // namespace

AdagioModel fit(const PointCloud& cloud, Eigen::Index target_dim, SpectralBackend backend,
                std::uint64_t seed) {
  if (target_dim < 2 || target_dim > cloud.d()) {
    throw std::invalid_argument("fit: target_dim = " + std::to_string(target_dim) +
                                " outside [2, " + std::to_string(cloud.d()) + "]");
  }
  if (cloud.n() < 2) throw std::invalid_argument("fit: need at least 2 points");
  return fit_with_split(cloud, target_dim / 2, target_dim - target_dim / 2, backend, seed);
}

AdagioModel fit_with_split(const PointCloud& cloud, Eigen::Index s, Eigen::Index k,
                           SpectralBackend backend, std::uint64_t seed) {
  if (s < 0 || s > cloud.d()) {
    throw std::invalid_argument("fit_with_split: s = " + std::to_string(s) + " outside [0, " +
                                std::to_string(cloud.d()) + "]");
  }
  if (k < 1) {
    throw std::invalid_argument(
        "fit_with_split: k must be >= 1 (for a pure principal projection use the sweep "
        "module's pca method)");
  }
  if (cloud.n() < 2) throw std::invalid_argument("fit_with_split: need at least 2 points");
  if (s + k > cloud.d()) {
    std::cerr << "fit_with_split: warning: output dimension " << (s + k)
              << " exceeds ambient dimension " << cloud.d() << "\n";
  }

  auto [centered, info] = center(cloud);

  AdagioModel model;
  model.mean = std::move(info.mean);
  model.basis = principal_basis(centered, s, backend, seed);
  model.sketch = sample_jl(k, cloud.d(), derive_seed(seed, "jl"));
  model.seed = seed;
  model.backend = backend;
  return model;
}

Vector transform(const AdagioModel& model, const Vector& w) {
  if (w.size() != model.d()) {
    throw std::invalid_argument("transform: vector has dimension " + std::to_string(w.size()) +
                                ", model expects " + std::to_string(model.d()));
  }
  const Vector centered = w - model.mean;
  Vector out(model.target_dim());
  if (model.s() > 0) {
    const Vector coords = model.basis.rows * centered;
    out.head(model.s()) = coords;
    const Vector residual = centered - model.basis.rows.transpose() * coords;
    out.tail(model.k()) = model.sketch.entries * residual;
  } else {
    out = model.sketch.entries * centered;
  }
  return out;
}

PointCloud transform_all(const AdagioModel& model, const PointCloud& cloud) {
  if (cloud.d() != model.d()) {
    throw std::invalid_argument("transform_all: cloud dimension " + std::to_string(cloud.d()) +
                                ", model expects " + std::to_string(model.d()));
  }
  PointCloud out;
  out.data.resize(cloud.n(), model.target_dim());
  out.labels = cloud.labels;

  constexpr Eigen::Index rows_per_chunk = 32;
  const auto chunks =
      static_cast<std::size_t>((cloud.n() + rows_per_chunk - 1) / rows_per_chunk);
  parallel_chunks(chunks, [&](std::size_t c) {
    const Eigen::Index begin = static_cast<Eigen::Index>(c) * rows_per_chunk;
    const Eigen::Index end = std::min(begin + rows_per_chunk, cloud.n());
    for (Eigen::Index i = begin; i < end; ++i) {
      out.data.row(i) = transform(model, cloud.data.row(i).transpose()).transpose();
    }
  });
  return out;
}

void save_model(const AdagioModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("model: cannot write " + path);

  out.write(kModelMagic, 4);
  write_u32(out, kModelVersion);
  write_u32(out, static_cast<std::uint32_t>(model.d()));
  write_u32(out, static_cast<std::uint32_t>(model.s()));
  write_u32(out, static_cast<std::uint32_t>(model.k()));
  const unsigned char tag = static_cast<unsigned char>(model.backend);
  out.write(reinterpret_cast<const char*>(&tag), 1);
  write_u64(out, model.seed);

  write_doubles(out, model.mean.data(), static_cast<std::size_t>(model.d()));
  write_doubles(out, model.basis.rows.data(),
                static_cast<std::size_t>(model.s()) * static_cast<std::size_t>(model.d()));
  write_doubles(out, model.sketch.entries.data(),
                static_cast<std::size_t>(model.k()) * static_cast<std::size_t>(model.d()));
  if (!out) throw IoError("model: write failed for " + path);
}

AdagioModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("model: cannot open " + path);

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kModelMagic, 4) != 0) {
    throw IoError("model: bad magic in " + path);
  }
  const std::uint32_t version = read_u32(in, path);
  if (version != kModelVersion) {
    throw IoError("model: unsupported version " + std::to_string(version) + " in " + path);
  }
  const std::uint32_t d = read_u32(in, path);
  const std::uint32_t s = read_u32(in, path);
  const std::uint32_t k = read_u32(in, path);
  if (d == 0 || k == 0) throw IoError("model: invalid dimensions in " + path);

  unsigned char tag = 0;
  in.read(reinterpret_cast<char*>(&tag), 1);
  if (!in) throw IoError("model: truncated file " + path);
  if (tag > 1) throw IoError("model: unknown backend tag in " + path);

  AdagioModel model;
  model.backend = static_cast<SpectralBackend>(tag);
  model.seed = read_u64(in, path);

  model.mean.resize(d);
  read_doubles(in, model.mean.data(), d, path);
  model.basis.rows.resize(s, d);
  read_doubles(in, model.basis.rows.data(), std::size_t{s} * d, path);
  model.sketch.entries.resize(k, d);
  read_doubles(in, model.sketch.entries.data(), std::size_t{k} * d, path);
  model.sketch.seed = derive_seed(model.seed, "jl");
  return model;
}

}  // namespace adagio
