// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria needing MNIST fall back to synthetic clouds when
// ADAGIO_MNIST_DIR is not set (the property being checked stays the same).

#include "adagio/dataset.hpp"
#include "adagio/distortion.hpp"
#include "adagio/downstream.hpp"
#include "adagio/embed.hpp"
#include "adagio/jl.hpp"
#include "adagio/parallel.hpp"
#include "adagio/rng.hpp"
#include "adagio/spectral.hpp"
#include "adagio/sweep.hpp"

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace adagio;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PointCloud gaussian_cloud(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  SeededRng rng(seed);
  PointCloud cloud;
  cloud.data.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) cloud.data(i, j) = rng.normal();
  return cloud;
}

// 95% of the expected energy in the first `core` coordinates.
PointCloud split_energy_cloud(Eigen::Index n, Eigen::Index d, Eigen::Index core,
                              double core_energy, std::uint64_t seed) {
  PointCloud cloud = gaussian_cloud(n, d, seed);
  const double core_scale = std::sqrt(core_energy / static_cast<double>(core));
  const double tail_scale = std::sqrt((1.0 - core_energy) / static_cast<double>(d - core));
  for (Eigen::Index j = 0; j < d; ++j) cloud.data.col(j) *= j < core ? core_scale : tail_scale;
  return cloud;
}

// Heavy-tailed spectrum: polynomially decaying column scales, the regime
// where principal components alone need many dimensions for a near-isometry.
PointCloud decaying_cloud(Eigen::Index n, Eigen::Index d, double exponent, std::uint64_t seed) {
  PointCloud cloud = gaussian_cloud(n, d, seed);
  for (Eigen::Index j = 0; j < d; ++j) {
    cloud.data.col(j) *= std::pow(static_cast<double>(j + 1), -exponent);
  }
  return cloud;
}

// A strong 10-dim core, an isotropic fine-detail tail, and ten point pairs
// that share their core coordinates and differ almost only in the tail.
// Those pairs force a principal projection to grind through the whole tail
// while a small sketch of the residual covers them cheaply.
PointCloud clustered_tail_cloud(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  const Eigen::Index core = 10;
  const double core_std = std::sqrt(0.85 / static_cast<double>(core));
  const double tail_std = std::sqrt(0.15 / static_cast<double>(d - core));
  SeededRng rng(seed);
  PointCloud cloud;
  cloud.data.resize(n, d);
  const Eigen::Index base = n - 10;
  for (Eigen::Index i = 0; i < base; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      cloud.data(i, j) = (j < core ? core_std : tail_std) * rng.normal();
    }
  }
  for (Eigen::Index p = 0; p < 10; ++p) {
    const Eigen::Index i = base + p;
    for (Eigen::Index j = 0; j < core; ++j) {
      cloud.data(i, j) = cloud.data(p, j) + 0.3 * core_std * rng.normal();
    }
    for (Eigen::Index j = core; j < d; ++j) cloud.data(i, j) = tail_std * rng.normal();
  }
  return cloud;
}

std::optional<PointCloud> load_mnist_800() {
  const char* dir = std::getenv("ADAGIO_MNIST_DIR");
  if (dir == nullptr) return std::nullopt;
  const std::string images = std::string(dir) + "/train-images-idx3-ubyte";
  if (!std::filesystem::exists(images)) return std::nullopt;
  const std::string labels = std::string(dir) + "/train-labels-idx1-ubyte";
  PointCloud full = std::filesystem::exists(labels)
                        ? load_idx(images, labels)
                        : load_idx(images, std::nullopt);
  return sample_points(full, 800, 1);
}

Matrix complement_rows(const OrthonormalBasis& basis) {
  const Eigen::MatrixXd rows = basis.rows;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(basis.d() - basis.s()).transpose();
}

double pca_max_distortion(const PointCloud& centered, const OrthonormalBasis& basis) {
  PointCloud embedded;
  embedded.data = centered.data * basis.rows.transpose();
  return max_distortion(centered, embedded);
}

double pca_mean_distortion(const PointCloud& centered, const OrthonormalBasis& basis) {
  PointCloud embedded;
  embedded.data = centered.data * basis.rows.transpose();
  return evaluate(centered, embedded, PairSampling::all()).mean_distortion;
}

// --------------------------------------------------------------------------
// CLI helpers for criterion 10

struct CliRun {
  int exit_code = -1;
};

CliRun run_cli(const std::string& args) {
  const char* binary = std::getenv("ADAGIO_CLI");
  if (binary == nullptr) return {};
  const std::string command = std::string(binary) + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(command.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string without_timing(const std::string& json_text) {
  nlohmann::json doc = nlohmann::json::parse(json_text);
  doc.erase("timing");
  return doc.dump();
}

// --------------------------------------------------------------------------

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

bool criterion_isometry_oracle(std::string& detail) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PointCloud cloud = gaussian_cloud(100, 30, 1000 + seed);
    AdagioModel model = fit(cloud, 10, SpectralBackend::exact, seed);
    model.sketch.entries = complement_rows(model.basis);
    worst = std::max(worst, max_distortion(cloud, transform_all(model, cloud)));
  }
  const double elapsed = seconds_since(start);
  detail = "worst distortion " + std::to_string(worst) + ", " + std::to_string(elapsed) + "s";
  return worst <= 1e-9 && elapsed < 5.0;
}

bool criterion_pythagoras(std::string& detail) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const PointCloud cloud = gaussian_cloud(200, 100, 2000 + seed);
    const AdagioModel model = fit(cloud, 40, SpectralBackend::exact, seed);
    const PointCloud embedded = transform_all(model, cloud);
    for (Eigen::Index i = 0; i < cloud.n(); ++i) {
      for (Eigen::Index j = i + 1; j < cloud.n(); ++j) {
        const Vector diff = (cloud.data.row(i) - cloud.data.row(j)).transpose();
        const Vector principal = model.basis.rows * diff;
        const Vector residual = diff - model.basis.rows.transpose() * principal;
        const double lhs = (embedded.data.row(i) - embedded.data.row(j)).squaredNorm();
        const double rhs =
            principal.squaredNorm() + (model.sketch.entries * residual).squaredNorm();
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  detail = "worst |lhs - rhs| = " + std::to_string(worst);
  return worst <= 1e-9;
}

bool criterion_theorem1(std::string& detail) {
  const auto start = Clock::now();
  const PointCloud cloud = split_energy_cloud(400, 100, 10, 0.95, 11);
  const PointCloud centered = center(cloud).first;
  const auto basis = exact_top_svd(centered, 10).first;
  const double delta_p = pca_max_distortion(centered, basis);

  const auto k = static_cast<Eigen::Index>(jl_dimension(400, 0.5, 0.01));
  const double target = delta_p * 0.5 + 0.02;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const AdagioModel model = fit_with_split(cloud, 10, k, SpectralBackend::exact, seed);
    if (max_distortion(cloud, transform_all(model, cloud)) <= target) ++hits;
  }
  const double elapsed = seconds_since(start);
  detail = "delta_P = " + std::to_string(delta_p) + ", k = " + std::to_string(k) + ", " +
           std::to_string(hits) + "/100 within " + std::to_string(target) + ", " +
           std::to_string(elapsed) + "s";
  return hits >= 95 && elapsed < 120.0;
}

bool criterion_jl_lemma(std::string& detail) {
  const auto start = Clock::now();
  const PointCloud cloud = gaussian_cloud(100, 200, 4242);
  const auto k = static_cast<Eigen::Index>(jl_dimension(100, 0.3, 0.05));
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const JlMatrix sketch = sample_jl(k, 200, seed);
    PointCloud embedded;
    embedded.data = cloud.data * sketch.entries.transpose();
    if (max_distortion(cloud, embedded) <= 0.3) ++hits;
  }
  const double elapsed = seconds_since(start);
  detail = "k = " + std::to_string(k) + ", " + std::to_string(hits) + "/100 within 0.3, " +
           std::to_string(elapsed) + "s";
  return hits >= 95 && elapsed < 120.0;
}

bool criterion_ordering(std::string& detail) {
  const std::optional<PointCloud> mnist = load_mnist_800();
  const PointCloud cloud = mnist ? *mnist : split_energy_cloud(400, 100, 10, 0.95, 11);
  const PointCloud centered = center(cloud).first;
  const auto pca_basis = exact_top_svd(centered, 20).first;
  const double pca_mean = pca_mean_distortion(centered, pca_basis);

  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const AdagioModel model = fit(cloud, 20, SpectralBackend::exact, seed);
    const double mean =
        evaluate(cloud, transform_all(model, cloud), PairSampling::all()).mean_distortion;
    if (mean < pca_mean) ++wins;
  }
  detail = std::string(mnist ? "mnist-800" : "synthetic") + ", pca mean " +
           std::to_string(pca_mean) + ", adagio wins " + std::to_string(wins) + "/10";
  if (wins < 9) return false;

  if (mnist) {
    // paper table row: target dimension 298 reaches max distortion 0.05 +-20%
    const AdagioModel model = fit_with_split(cloud, 149, 149, SpectralBackend::exact, 0);
    const double dist = max_distortion(cloud, transform_all(model, cloud));
    detail += ", distortion at r=298: " + std::to_string(dist);
    if (dist < 0.04 || dist > 0.06) return false;
  }
  return true;
}

bool criterion_tradeoff(std::string& detail) {
  const auto start = Clock::now();
  const std::optional<PointCloud> mnist = load_mnist_800();
  const PointCloud cloud = mnist ? *mnist : clustered_tail_cloud(800, 784, 29);
  const Eigen::Index r_max = std::min(cloud.n(), cloud.d());

  const MinDimResult adagio =
      min_dim_for_distortion(cloud, Method::adagio_exact, 0.15, 0, 2, r_max);
  const MinDimResult pca = min_dim_for_distortion(cloud, Method::pca, 0.15, 0, 1, r_max);
  const double elapsed = seconds_since(start);

  const double ratio =
      static_cast<double>(adagio.target_dim) / static_cast<double>(pca.target_dim);
  detail = std::string(mnist ? "mnist-800" : "synthetic") + ", adagio r = " +
           std::to_string(adagio.target_dim) + ", pca r = " + std::to_string(pca.target_dim) +
           ", ratio " + std::to_string(ratio) + ", " + std::to_string(elapsed) + "s";

  if (!adagio.achieved || !pca.achieved) return false;
  if (!(adagio.target_dim < pca.target_dim && ratio <= 0.75)) return false;
  if (mnist) {
    // absolute anchors ~130 and ~240, +-25%
    if (adagio.target_dim < 98 || adagio.target_dim > 163) return false;
    if (pca.target_dim < 180 || pca.target_dim > 300) return false;
  }
  return elapsed < 600.0;
}

bool criterion_distortion_oracle(std::string& detail) {
  SeededRng rng(777);
  double worst = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    const auto n = static_cast<Eigen::Index>(10 + rng.below(190));
    const auto d = static_cast<Eigen::Index>(2 + rng.below(39));
    const PointCloud cloud = gaussian_cloud(n, d, rng.next_u64());
    const auto k = static_cast<Eigen::Index>(1 + rng.below(8));
    const JlMatrix sketch = sample_jl(k, d, rng.next_u64());
    PointCloud embedded;
    embedded.data = cloud.data * sketch.entries.transpose();

    // independent naive double loop
    double naive_max = 0.0;
    long double naive_sum = 0.0L;
    std::uint64_t evaluated = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double orig = (cloud.data.row(i) - cloud.data.row(j)).norm();
        if (orig == 0.0) continue;
        const double emb = (embedded.data.row(i) - embedded.data.row(j)).norm();
        const double value = std::abs(emb / orig - 1.0);
        naive_max = std::max(naive_max, value);
        naive_sum += value;
        ++evaluated;
      }
    }
    const double naive_mean =
        evaluated == 0 ? 0.0 : static_cast<double>(naive_sum / evaluated);

    std::vector<std::uint64_t> reference_hist;
    for (const int budget : {1, 2, 0}) {
      set_thread_budget(budget);
      const DistortionReport report = evaluate(cloud, embedded, PairSampling::all());
      worst = std::max(worst, std::abs(report.max_distortion - naive_max));
      worst = std::max(worst, std::abs(report.mean_distortion - naive_mean));
      if (reference_hist.empty()) {
        reference_hist = report.histogram;
      } else if (reference_hist != report.histogram) {
        set_thread_budget(0);
        detail = "histogram varies with thread count";
        return false;
      }
    }
    set_thread_budget(0);
  }
  detail = "worst deviation from naive loop = " + std::to_string(worst);
  return worst <= 1e-12;
}

bool criterion_harmonic_oracle(std::string& detail) {
  SeededRng rng(31337);
  double worst = 0.0;
  double principle_violation = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(10));
    KnnGraph graph;
    graph.n = n;
    graph.k = 1;
    for (int v = 1; v < n; ++v) {
      const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
      graph.edges.push_back({std::min(u, v), std::max(u, v), 0.5 + 1.5 * rng.unit()});
    }
    for (std::uint64_t e = 0; e < rng.below(10); ++e) {
      const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (u == v) continue;
      const int a = std::min(u, v), b = std::max(u, v);
      bool present = false;
      for (const auto& edge : graph.edges) present = present || (edge.u == a && edge.v == b);
      if (!present) graph.edges.push_back({a, b, 0.5 + 1.5 * rng.unit()});
    }

    const int n_labeled = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = static_cast<std::size_t>(n); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
    }
    std::vector<Eigen::Index> labeled_ids(order.begin(), order.begin() + n_labeled);
    std::vector<int> labels;
    for (int i = 0; i < n_labeled; ++i) labels.push_back(static_cast<int>(rng.below(2)));

    const ClassificationResult result = harmonic_propagate(graph, labeled_ids, labels, 2);

    // steepest-descent minimization of the clamped quadratic
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.5);
    std::vector<char> clamped(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < labeled_ids.size(); ++i) {
      clamped[static_cast<std::size_t>(labeled_ids[i])] = 1;
      x(labeled_ids[i]) = labels[i];
    }
    for (int iter = 0; iter < 200000; ++iter) {
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
      for (const auto& e : graph.edges) {
        const double diff = x(e.u) - x(e.v);
        grad(e.u) += 2.0 * e.weight * diff;
        grad(e.v) -= 2.0 * e.weight * diff;
      }
      for (int i = 0; i < n; ++i) {
        if (clamped[static_cast<std::size_t>(i)]) grad(i) = 0.0;
      }
      const double gg = grad.squaredNorm();
      if (gg < 1e-26) break;
      double ghg = 0.0;
      for (const auto& e : graph.edges) {
        const double diff = grad(e.u) - grad(e.v);
        ghg += 2.0 * e.weight * diff * diff;
      }
      if (ghg <= 0.0) break;
      x -= (gg / ghg) * grad;
    }

    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(result.scores(i, 0) - x(i)));
      principle_violation = std::max(principle_violation, -result.scores(i, 0));
      principle_violation = std::max(principle_violation, result.scores(i, 0) - 1.0);
    }
  }
  detail = "worst |solver - oracle| = " + std::to_string(worst) +
           ", max principle violation = " + std::to_string(principle_violation);
  return worst <= 1e-8 && principle_violation <= 1e-9;
}

bool criterion_pca_bound(std::string& detail) {
  SeededRng rng(909);
  double worst_excess = -1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<Eigen::Index>(20 + rng.below(60));
    const auto d = static_cast<Eigen::Index>(5 + rng.below(25));
    const PointCloud cloud = center(gaussian_cloud(n, d, rng.next_u64())).first;
    const auto s =
        static_cast<Eigen::Index>(1 + rng.below(static_cast<std::uint64_t>(std::min(n, d) - 1)));
    const auto [basis, summary] = exact_top_svd(cloud, s);
    const double sigma_next =
        s < summary.singular_values.size() ? summary.singular_values(s) : 0.0;

    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Vector diff = (cloud.data.row(i) - cloud.data.row(j)).transpose();
        const double distance = diff.norm();
        const double measured = std::abs((basis.rows * diff).norm() / distance - 1.0);
        const double bound = pca_pair_distortion_bound(sigma_next, distance);
        worst_excess = std::max(worst_excess, measured - bound);
      }
    }
  }
  detail = "worst (measured - bound) = " + std::to_string(worst_excess);
  return worst_excess <= 1e-9;
}

bool criterion_cli_determinism(std::string& detail) {
  if (std::getenv("ADAGIO_CLI") == nullptr) {
    detail = "ADAGIO_CLI not set";
    return false;
  }
  const std::string dir =
      (std::filesystem::temp_directory_path() / ("adagio_acc_" + std::to_string(::getpid())))
          .string();
  std::filesystem::create_directories(dir);
  const auto path = [&](const std::string& name) { return dir + "/" + name; };

  PointCloud cloud = gaussian_cloud(60, 30, 5150);
  std::vector<int> labels(60, 0);
  for (int i = 0; i < 30; ++i) {
    cloud.data(i, 0) += 20.0;
    labels[static_cast<std::size_t>(i)] = 1;
  }
  cloud.labels = labels;
  save_csv(cloud, path("cloud.csv"));

  bool ok = true;
  const std::string fit_args = " fit --input " + path("cloud.csv") +
                               " --label-column 30 --target-dim 12 --backend randomized"
                               " --model-out " + path("model.adg");
  ok = ok && run_cli("--threads 1 --output " + path("f1.json") + fit_args).exit_code == 0;
  const std::string model_once = slurp(path("model.adg"));
  ok = ok && run_cli("--threads 2 --output " + path("f2.json") + fit_args).exit_code == 0;
  ok = ok && !model_once.empty() && model_once == slurp(path("model.adg"));
  ok = ok && without_timing(slurp(path("f1.json"))) == without_timing(slurp(path("f2.json")));

  const std::string transform_args =
      " transform --model " + path("model.adg") + " --input " + path("cloud.csv") +
      " --label-column 30";
  ok = ok && run_cli("--threads 1 --output " + path("t1.csv") + transform_args).exit_code == 0;
  ok = ok && run_cli("--threads 2 --output " + path("t2.csv") + transform_args).exit_code == 0;
  ok = ok && slurp(path("t1.csv")) == slurp(path("t2.csv"));

  const std::string distort_args = " distort --original " + path("cloud.csv") +
                                   " --label-column 30 --model " + path("model.adg") +
                                   " --mode sample:500";
  ok = ok && run_cli("--threads 1 --output " + path("d1.json") + distort_args).exit_code == 0;
  ok = ok && run_cli("--threads 2 --output " + path("d2.json") + distort_args).exit_code == 0;
  ok = ok && without_timing(slurp(path("d1.json"))) == without_timing(slurp(path("d2.json")));

  const std::string ssl_args = " ssl --input " + path("cloud.csv") +
                               " --label-column 30 --k 5 --folds 5";
  ok = ok && run_cli("--threads 1 --output " + path("s1.json") + ssl_args).exit_code == 0;
  ok = ok && run_cli("--threads 2 --output " + path("s2.json") + ssl_args).exit_code == 0;
  ok = ok && without_timing(slurp(path("s1.json"))) == without_timing(slurp(path("s2.json")));

  std::filesystem::remove_all(dir);
  detail = ok ? "fit/transform/distort/ssl byte-identical across --threads 1/2"
              : "primary outputs differ";
  return ok;
}

bool criterion_performance(std::string& detail) {
  const PointCloud cloud = decaying_cloud(800, 784, 0.6, 99);

  const auto fit_start = Clock::now();
  const AdagioModel model = fit(cloud, 298, SpectralBackend::exact, 0);
  const PointCloud embedded = transform_all(model, cloud);
  const double fit_transform_seconds = seconds_since(fit_start);

  const auto eval_start = Clock::now();
  const DistortionReport report = evaluate(cloud, embedded, PairSampling::all());
  const double eval_seconds = seconds_since(eval_start);

  detail = "fit+transform " + std::to_string(fit_transform_seconds) + "s, all-pairs eval " +
           std::to_string(eval_seconds) + "s (" + std::to_string(report.n_pairs_evaluated) +
           " pairs)";
  return fit_transform_seconds < 30.0 && eval_seconds < 60.0;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact-isometry oracle (complement sketch)", criterion_isometry_oracle},
      {2, "Pythagoras decomposition", criterion_pythagoras},
      {3, "multiplicative distortion reduction (statistical)", criterion_theorem1},
      {4, "JL guarantee at the sized dimension (statistical)", criterion_jl_lemma},
      {5, "combined map beats pca on mean distortion at r=20", criterion_ordering},
      {6, "trade-off: smaller dimension than pca at delta=0.15", criterion_tradeoff},
      {7, "distortion engine equals the naive loop", criterion_distortion_oracle},
      {8, "harmonic solver equals brute-force minimization", criterion_harmonic_oracle},
      {9, "spectral bound dominates measured pca distortion", criterion_pca_bound},
      {10, "CLI determinism across runs and thread counts", criterion_cli_determinism},
      {11, "desk-scale performance (800x784)", criterion_performance},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = Clock::now();
    std::string detail;
    bool passed = false;
    try {
      passed = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    std::printf("%s criterion %2d [%6.1fs] %s%s%s\n", passed ? "PASS" : "FAIL", criterion.id,
                elapsed, criterion.name.c_str(), detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
