#include "adagio/sweep.hpp"

#include "adagio/dataset.hpp"
#include "adagio/embed.hpp"
#include "adagio/errors.hpp"
#include "adagio/jl.hpp"
#include "adagio/rng.hpp"
#include "adagio/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>

namespace adagio {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// The exact right-singular basis computed once at full usable rank; any
// smaller rank is a row prefix of the same decomposition, so prefixes agree
// bit-for-bit with exact_top_svd at that rank.
class ExactBasisCache {
 public:
  explicit ExactBasisCache(const PointCloud& centered) : centered_(centered) {}

  const Matrix& full_rows() {
    if (full_rows_.size() == 0) {
      const Eigen::Index max_rank = std::min(centered_.n(), centered_.d());
      full_rows_ = exact_top_svd(centered_, max_rank).first.rows;
    }
    return full_rows_;
  }

  OrthonormalBasis prefix(Eigen::Index s) {
    OrthonormalBasis basis;
    basis.rows = full_rows().topRows(s);
    return basis;
  }

  Eigen::Index max_rank() const { return std::min(centered_.n(), centered_.d()); }

 private:
  const PointCloud& centered_;
  Matrix full_rows_;
};

struct Cell {
  PointCloud embedded;
  double fit_seconds = 0.0;
  double transform_seconds = 0.0;
};

// Builds the embedded cloud for one (method, dim, seed) cell. The centered
// cloud and the mean are shared across cells; adagio cells assemble the same
// model fit() would produce for (cloud, r, backend, seed).
Cell embed_cell(const PointCloud& centered, ExactBasisCache& cache,
                Method method, Eigen::Index r, std::uint64_t seed, const Matrix* external_map) {
  Cell cell;
  const auto start = Clock::now();
  switch (method) {
    case Method::pca: {
      // Components beyond the usable rank carry zero variance; distances are
      // unchanged, so the projection is truncated there.
      const Eigen::Index s = std::min(r, cache.max_rank());
      const OrthonormalBasis basis = cache.prefix(s);
      cell.fit_seconds = seconds_since(start);
      const auto t0 = Clock::now();
      cell.embedded.data = centered.data * basis.rows.transpose();
      cell.transform_seconds = seconds_since(t0);
      return cell;
    }
    case Method::jl: {
      const JlMatrix sketch =
          sample_jl(r, centered.d(), derive_seed(seed, "jl"));
      cell.fit_seconds = seconds_since(start);
      const auto t0 = Clock::now();
      cell.embedded.data = centered.data * sketch.entries.transpose();
      cell.transform_seconds = seconds_since(t0);
      return cell;
    }
    case Method::external: {
      if (external_map == nullptr) {
        throw std::invalid_argument("sweep: method external needs an embedding matrix");
      }
      if (external_map->cols() != centered.d()) {
        throw std::invalid_argument("sweep: external matrix has " +
                                    std::to_string(external_map->cols()) + " columns, cloud has " +
                                    std::to_string(centered.d()));
      }
      cell.fit_seconds = seconds_since(start);
      const auto t0 = Clock::now();
      cell.embedded.data = centered.data * external_map->transpose();
      cell.transform_seconds = seconds_since(t0);
      return cell;
    }
    case Method::adagio_exact:
    case Method::adagio_randomized: {
      // Cells run on pre-centered data; distortion is shift-invariant, so
      // the cell model keeps a zero mean instead of undoing the centering.
      const Eigen::Index s = r / 2;
      const Eigen::Index k = r - r / 2;
      AdagioModel model;
      if (method == Method::adagio_exact && s <= cache.max_rank()) {
        model.mean = Vector::Zero(centered.d());
        model.seed = seed;
        model.backend = SpectralBackend::exact;
        if (s == 0) {
          model.basis.rows.resize(0, centered.d());
        } else {
          model.basis = cache.prefix(s);
        }
        model.sketch = sample_jl(k, centered.d(), derive_seed(seed, "jl"));
      } else {
        const SpectralBackend backend = method == Method::adagio_exact
                                            ? SpectralBackend::exact
                                            : SpectralBackend::randomized;
        model = fit_with_split(centered, s, k, backend, seed);
      }
      cell.fit_seconds = seconds_since(start);
      const auto t0 = Clock::now();
      cell.embedded = transform_all(model, centered);
      cell.transform_seconds = seconds_since(t0);
      return cell;
    }
  }
  throw std::invalid_argument("sweep: unknown method");
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::adagio_exact: return "adagio_exact";
    case Method::adagio_randomized: return "adagio_randomized";
    case Method::pca: return "pca";
    case Method::jl: return "jl";
    case Method::external: return "external";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "adagio_exact") return Method::adagio_exact;
  if (name == "adagio_randomized") return Method::adagio_randomized;
  if (name == "pca") return Method::pca;
  if (name == "jl") return Method::jl;
  if (name == "external") return Method::external;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::vector<SweepRow> tradeoff(const PointCloud& cloud, const std::vector<Eigen::Index>& dims,
                               const std::vector<Method>& methods,
                               const std::vector<std::uint64_t>& seeds,
                               const PairSampling& eval_mode, const Matrix* external_map) {
  if (dims.empty()) throw std::invalid_argument("tradeoff: dims must be non-empty");
  for (const Eigen::Index r : dims) {
    if (r < 1 || r > cloud.d()) {
      throw std::invalid_argument("tradeoff: dim " + std::to_string(r) + " outside [1, " +
                                  std::to_string(cloud.d()) + "]");
    }
  }

  const PointCloud centered = center(cloud).first;
  ExactBasisCache cache(centered);

  std::vector<SweepRow> rows;
  for (const Method method : methods) {
    const bool dims_apply = method != Method::external;
    const std::vector<Eigen::Index> cell_dims =
        dims_apply ? dims
                   : std::vector<Eigen::Index>{external_map ? external_map->rows() : 0};
    for (const Eigen::Index r : cell_dims) {
      for (const std::uint64_t seed : seeds) {
        Cell cell = embed_cell(centered, cache, method, r, seed, external_map);
        SweepRow row;
        row.method = method;
        row.target_dim = r;
        row.seed = seed;
        row.fit_seconds = cell.fit_seconds;
        const auto t0 = Clock::now();
        row.max_distortion = evaluate(centered, cell.embedded, eval_mode).max_distortion;
        row.eval_seconds = cell.transform_seconds + seconds_since(t0);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

MinDimResult min_dim_for_distortion(const PointCloud& cloud, Method method, double delta,
                                    std::uint64_t seed, Eigen::Index r_min, Eigen::Index r_max) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("min_dim_for_distortion: delta must lie in (0, 1)");
  }
  if (r_min < 1 || r_min > r_max || r_max > cloud.d()) {
    throw std::invalid_argument("min_dim_for_distortion: need 1 <= r_min <= r_max <= d");
  }
  if (method == Method::external) {
    throw std::invalid_argument("min_dim_for_distortion: external maps have a fixed dimension");
  }

  const PointCloud centered = center(cloud).first;
  ExactBasisCache cache(centered);

  std::map<Eigen::Index, double> probed;
  auto probe = [&](Eigen::Index r) {
    const auto found = probed.find(r);
    if (found != probed.end()) return found->second;
    const Cell cell = embed_cell(centered, cache, method, r, seed, nullptr);
    const double value = max_distortion(centered, cell.embedded);
    probed.emplace(r, value);
    return value;
  };

  MinDimResult result;
  double at_min = probe(r_min);
  if (at_min <= delta) {
    result.target_dim = r_min;
    result.achieved_distortion = at_min;
    result.achieved = true;
  } else {
    // Exponential probing for a bracket, then bisection on the fixed-seed
    // (pseudo-monotone) curve.
    Eigen::Index lo = r_min;
    Eigen::Index hi = r_min;
    double at_hi = at_min;
    while (at_hi > delta && hi < r_max) {
      lo = hi;
      hi = std::min<Eigen::Index>(r_max, std::max<Eigen::Index>(hi * 2, hi + 1));
      at_hi = probe(hi);
    }
    if (at_hi > delta) {
      result.target_dim = r_max;
      result.achieved_distortion = at_hi;
      result.achieved = false;
    } else {
      while (hi - lo > 1) {
        const Eigen::Index mid = lo + (hi - lo) / 2;
        if (probe(mid) <= delta) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      result.target_dim = hi;
      result.achieved_distortion = probed.at(hi);
      result.achieved = true;
    }
  }

  double previous = -1.0;
  result.monotone = true;
  for (const auto& [r, value] : probed) {
    if (previous >= 0.0 && value > previous + 1e-12) result.monotone = false;
    previous = value;
  }
  return result;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "method,target_dim,seed,max_distortion,fit_seconds,eval_seconds\n";
  char buf[160];
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%lld,%llu,%.17g,%.6f,%.6f\n", method_name(row.method),
                  static_cast<long long>(row.target_dim),
                  static_cast<unsigned long long>(row.seed), row.max_distortion, row.fit_seconds,
                  row.eval_seconds);
    out += buf;
  }
  return out;
}

}  // namespace adagio
