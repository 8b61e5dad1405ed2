#pragma once

#include "adagio/jl.hpp"
#include "adagio/point_cloud.hpp"
#include "adagio/spectral.hpp"

#include <cstdint>
#include <string>

namespace adagio {

enum class SpectralBackend : std::uint8_t { exact = 0, randomized = 1 };

// The fitted map f(w) = (P (w - mean), S (I - P^T P)(w - mean)): an
// orthonormal projector onto the top principal subspace concatenated with a
// Rademacher sketch of the orthogonal residual. Output dimension is s + k.
struct AdagioModel {
  Vector mean;            // d, column means of the training cloud
  OrthonormalBasis basis; // P, s x d (s may be 0)
  JlMatrix sketch;        // S, k x d
  std::uint64_t seed = 0;
  SpectralBackend backend = SpectralBackend::exact;

  Eigen::Index d() const { return sketch.d(); }
  Eigen::Index s() const { return basis.s(); }
  Eigen::Index k() const { return sketch.k(); }
  Eigen::Index target_dim() const { return s() + k(); }
};

// Fits with the default split s = floor(r/2), k = ceil(r/2). Centers the
// cloud internally; the model owns the mean and transform always subtracts
// it, including for out-of-sample queries.
AdagioModel fit(const PointCloud& cloud, Eigen::Index target_dim, SpectralBackend backend,
                std::uint64_t seed);

// Explicit split. s = 0 degenerates to a pure Rademacher projection; k = 0 is
// rejected (the residual would be dropped silently — pure PCA is available
// through the sweep module instead). s + k may exceed d, with a warning.
AdagioModel fit_with_split(const PointCloud& cloud, Eigen::Index s, Eigen::Index k,
                           SpectralBackend backend, std::uint64_t seed);

// Maps one ambient vector to its (s + k)-dimensional image.
Vector transform(const AdagioModel& model, const Vector& w);

// Row-wise transform, parallel over rows and bit-identical to the sequential
// row-by-row loop. Labels are carried along.
PointCloud transform_all(const AdagioModel& model, const PointCloud& cloud);

// Binary model file, bit-exact round trip. Layout: magic "ADG1";
// little-endian u32 version = 1; u32 d, s, k; u8 backend tag; u64 seed; then
// mean (d doubles), P (s*d doubles, row-major), S (k*d doubles, row-major),
// all little-endian IEEE-754.
void save_model(const AdagioModel& model, const std::string& path);
AdagioModel load_model(const std::string& path);

}  // namespace adagio
