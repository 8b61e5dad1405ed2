#include "adagio/jl.hpp"

#include "adagio/parallel.hpp"
#include "adagio/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adagio {

JlMatrix sample_jl(Eigen::Index k, Eigen::Index d, std::uint64_t seed) {
  if (k < 1 || d < 1) {
    throw std::invalid_argument("sample_jl: k and d must be >= 1");
  }
  JlMatrix m;
  m.seed = seed;
  m.entries.resize(k, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));

  constexpr Eigen::Index rows_per_chunk = 64;
  const auto chunks = static_cast<std::size_t>((k + rows_per_chunk - 1) / rows_per_chunk);
  parallel_chunks(chunks, [&](std::size_t c) {
    const Eigen::Index row_begin = static_cast<Eigen::Index>(c) * rows_per_chunk;
    const Eigen::Index row_end = std::min(row_begin + rows_per_chunk, k);
    for (Eigen::Index i = row_begin; i < row_end; ++i) {
      double* row = m.entries.row(i).data();
      for (Eigen::Index j = 0; j < d; ++j) {
        row[j] = scale * rademacher_sign(seed, static_cast<std::uint64_t>(i),
                                         static_cast<std::uint64_t>(j));
      }
    }
  });
  return m;
}

std::size_t jl_dimension(std::size_t n_points, double epsilon, double gamma) {
  if (n_points < 2) throw std::invalid_argument("jl_dimension: need n_points >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("jl_dimension: epsilon must lie in (0, 1)");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("jl_dimension: gamma must lie in (0, 1)");
  }
  const double n = static_cast<double>(n_points);
  const double denom = epsilon * epsilon / 2.0 - epsilon * epsilon * epsilon / 3.0;
  const double k = 4.0 * std::log(n * n / gamma) / denom;
  return static_cast<std::size_t>(std::ceil(k));
}

}  // namespace adagio
