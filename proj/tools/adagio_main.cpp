#include "adagio/dataset.hpp"
#include "adagio/distortion.hpp"
#include "adagio/downstream.hpp"
#include "adagio/embed.hpp"
#include "adagio/errors.hpp"
#include "adagio/jl.hpp"
#include "adagio/parallel.hpp"
#include "adagio/rng.hpp"
#include "adagio/spectral.hpp"
#include "adagio/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using adagio::PointCloud;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all hardware threads
  std::string output = "-";
  std::string format = "json";
};

struct InputOpts {
  std::string path;
  std::string format = "csv";
  bool has_header = false;
  int label_column = -1;
  std::string idx_labels;
};

void add_input_flags(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("--input", in.path, "input point cloud")->required();
  cmd->add_option("--input-format", in.format, "input format")
      ->check(CLI::IsMember({"csv", "idx"}))
      ->capture_default_str();
  cmd->add_flag("--has-header", in.has_header, "skip a CSV header line");
  cmd->add_option("--label-column", in.label_column, "CSV column holding integer labels");
  cmd->add_option("--idx-labels", in.idx_labels, "IDX label file accompanying the images");
}

PointCloud load_input(const InputOpts& in) {
  if (in.format == "idx") {
    return adagio::load_idx(in.path, in.idx_labels.empty()
                                         ? std::nullopt
                                         : std::optional<std::string>(in.idx_labels));
  }
  return adagio::load_csv(in.path, in.has_header,
                          in.label_column >= 0 ? std::optional<int>(in.label_column)
                                               : std::nullopt);
}

void write_output(const std::string& target, const std::string& content) {
  if (target == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(target);
  if (!out) throw adagio::IoError("cannot write output file " + target);
  out << content;
  if (!out) throw adagio::IoError("write failed for " + target);
}

void emit_json(const GlobalOpts& global, const json& doc) {
  write_output(global.output, doc.dump(2) + "\n");
}

adagio::SpectralBackend backend_from_name(const std::string& name) {
  if (name == "exact") return adagio::SpectralBackend::exact;
  if (name == "randomized") return adagio::SpectralBackend::randomized;
  throw std::invalid_argument("unknown backend '" + name + "'");
}

adagio::PairSampling parse_mode(const std::string& mode, std::uint64_t seed) {
  if (mode == "all") return adagio::PairSampling::all();
  if (mode.rfind("sample:", 0) == 0) {
    const std::string count = mode.substr(7);
    try {
      return adagio::PairSampling::sample(std::stoull(count),
                                          adagio::derive_seed(seed, "sampling"));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad sample size in --mode " + mode);
    }
  }
  throw std::invalid_argument("--mode must be 'all' or 'sample:M'");
}

// ---------------------------------------------------------------------------
// fit

struct FitOpts {
  InputOpts in;
  int target_dim = -1;
  std::string split;
  double epsilon = -1.0;
  double gamma = 0.01;
  double jl_multiplier = 1.0;
  int pca_dims = 0;
  std::string backend = "exact";
  std::string model_out;
};

void run_fit(const GlobalOpts& global, const FitOpts& o) {
  const int given = (o.target_dim >= 0 ? 1 : 0) + (o.split.empty() ? 0 : 1) +
                    (o.epsilon > 0.0 ? 1 : 0);
  if (given != 1) {
    throw std::invalid_argument("give exactly one of --target-dim, --split, --epsilon");
  }
  const PointCloud cloud = load_input(o.in);
  const adagio::SpectralBackend backend = backend_from_name(o.backend);

  const auto t0 = Clock::now();
  adagio::AdagioModel model;
  if (o.target_dim >= 0) {
    model = adagio::fit(cloud, o.target_dim, backend, global.seed);
  } else if (!o.split.empty()) {
    long s = 0, k = 0;
    if (std::sscanf(o.split.c_str(), "%ld,%ld", &s, &k) != 2) {
      throw std::invalid_argument("--split expects 's,k'");
    }
    model = adagio::fit_with_split(cloud, s, k, backend, global.seed);
  } else {
    auto k = adagio::jl_dimension(static_cast<std::size_t>(cloud.n()), o.epsilon, o.gamma);
    if (o.jl_multiplier != 1.0) {
      k = static_cast<std::size_t>(
          std::max(1.0, std::ceil(o.jl_multiplier * static_cast<double>(k))));
    }
    model = adagio::fit_with_split(cloud, o.pca_dims, static_cast<Eigen::Index>(k), backend,
                                   global.seed);
  }
  const double fit_seconds = seconds_since(t0);
  adagio::save_model(model, o.model_out);

  emit_json(global, json{{"n", cloud.n()},
                         {"d", model.d()},
                         {"s", model.s()},
                         {"k", model.k()},
                         {"target_dim", model.target_dim()},
                         {"backend", o.backend},
                         {"seed", model.seed},
                         {"model_path", o.model_out},
                         {"timing", {{"fit_seconds", fit_seconds}}}});
}

// ---------------------------------------------------------------------------
// transform

struct TransformOpts {
  InputOpts in;
  std::string model;
};

void run_transform(const GlobalOpts& global, const TransformOpts& o) {
  const adagio::AdagioModel model = adagio::load_model(o.model);
  const PointCloud cloud = load_input(o.in);
  const PointCloud embedded = adagio::transform_all(model, cloud);
  write_output(global.output, adagio::csv_string(embedded));
}

// ---------------------------------------------------------------------------
// distort

struct DistortOpts {
  InputOpts original;
  std::string embedded;
  bool embedded_has_labels = false;
  std::string model;
  std::string mode = "auto";
  int bins = 50;
  double hist_max = 1.0;
};

void run_distort(const GlobalOpts& global, const DistortOpts& o) {
  if (o.embedded.empty() == o.model.empty()) {
    throw std::invalid_argument("give exactly one of --embedded, --model");
  }
  const PointCloud original = load_input(o.original);

  PointCloud embedded;
  double transform_seconds = 0.0;
  if (!o.model.empty()) {
    const adagio::AdagioModel model = adagio::load_model(o.model);
    const auto t0 = Clock::now();
    embedded = adagio::transform_all(model, original);
    transform_seconds = seconds_since(t0);
  } else {
    // transform output carries labels in the last column when present
    embedded = adagio::load_csv(o.embedded, false, std::nullopt);
    if (o.embedded_has_labels) {
      embedded.data = adagio::Matrix(embedded.data.leftCols(embedded.d() - 1));
    }
  }

  // default: all pairs up to n = 5000, a fixed-size sample above; the
  // report's sampled flag records which one ran
  std::string mode_text = o.mode;
  if (mode_text == "auto") {
    const std::uint64_t n = static_cast<std::uint64_t>(original.n());
    mode_text = n <= 5000 ? "all" : "sample:2000000";
  }
  const adagio::PairSampling mode = parse_mode(mode_text, global.seed);
  const auto t0 = Clock::now();
  const adagio::DistortionReport report =
      adagio::evaluate(original, embedded, mode, o.bins, o.hist_max);
  const double eval_seconds = seconds_since(t0);

  if (global.format == "csv") {
    write_output(global.output, adagio::histogram_csv(report));
    return;
  }
  json doc = adagio::report_to_json(report);
  doc["timing"] = {{"transform_seconds", transform_seconds}, {"eval_seconds", eval_seconds}};
  emit_json(global, doc);
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  InputOpts in;
  std::vector<long> dims;
  std::vector<std::string> methods{"adagio_exact", "pca", "jl"};
  std::vector<std::uint64_t> seeds;
  std::string eval_mode = "all";
  double delta = -1.0;
  long r_min = 1;
  long r_max = 0;  // 0 = ambient dimension
  std::string external_matrix;
};

void run_sweep(const GlobalOpts& global, const SweepOpts& o) {
  const PointCloud cloud = load_input(o.in);
  std::vector<adagio::Method> methods;
  for (const std::string& name : o.methods) methods.push_back(adagio::method_from_name(name));
  const std::vector<std::uint64_t> seeds = o.seeds.empty()
                                               ? std::vector<std::uint64_t>{global.seed}
                                               : o.seeds;

  adagio::Matrix external;
  const adagio::Matrix* external_ptr = nullptr;
  if (!o.external_matrix.empty()) {
    external = adagio::load_csv(o.external_matrix, false, std::nullopt).data;
    external_ptr = &external;
  }

  if (o.delta > 0.0) {
    const Eigen::Index r_max = o.r_max > 0 ? o.r_max : cloud.d();
    json rows = json::array();
    std::string csv = "method,delta,target_dim,achieved_distortion,achieved,monotone\n";
    for (std::size_t i = 0; i < methods.size(); ++i) {
      const adagio::MinDimResult result = adagio::min_dim_for_distortion(
          cloud, methods[i], o.delta, seeds.front(), o.r_min, r_max);
      rows.push_back(json{{"method", o.methods[i]},
                          {"delta", o.delta},
                          {"target_dim", result.target_dim},
                          {"achieved_distortion", result.achieved_distortion},
                          {"achieved", result.achieved},
                          {"monotone", result.monotone}});
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s,%.17g,%lld,%.17g,%d,%d\n", o.methods[i].c_str(),
                    o.delta, static_cast<long long>(result.target_dim),
                    result.achieved_distortion, result.achieved ? 1 : 0,
                    result.monotone ? 1 : 0);
      csv += buf;
    }
    if (global.format == "csv") {
      write_output(global.output, csv);
    } else {
      emit_json(global, json{{"delta", o.delta}, {"results", rows}});
    }
    return;
  }

  if (o.dims.empty()) throw std::invalid_argument("--dims is required without --delta");
  std::vector<Eigen::Index> dims(o.dims.begin(), o.dims.end());
  const std::vector<adagio::SweepRow> rows = adagio::tradeoff(
      cloud, dims, methods, seeds, parse_mode(o.eval_mode, global.seed), external_ptr);

  if (global.format == "csv") {
    write_output(global.output, adagio::sweep_csv(rows));
    return;
  }
  json out = json::array();
  for (const adagio::SweepRow& row : rows) {
    out.push_back(json{{"method", adagio::method_name(row.method)},
                       {"target_dim", row.target_dim},
                       {"seed", row.seed},
                       {"max_distortion", row.max_distortion},
                       {"timing",
                        {{"fit_seconds", row.fit_seconds}, {"eval_seconds", row.eval_seconds}}}});
  }
  emit_json(global, json{{"rows", out}});
}

// ---------------------------------------------------------------------------
// stablerank

struct StableRankOpts {
  InputOpts in;
  int rank = 0;  // 0 = full exact spectrum
  std::string spectrum_out;
};

void run_stablerank(const GlobalOpts& global, const StableRankOpts& o) {
  const PointCloud cloud = load_input(o.in);
  const PointCloud centered = adagio::center(cloud).first;

  adagio::SpectralSummary summary;
  if (o.rank > 0) {
    std::cerr << "stablerank: warning: truncated spectrum (rank " << o.rank
              << "); the reference quantity uses the full spectrum\n";
    const Eigen::Index max_rank = std::min(centered.n(), centered.d());
    const Eigen::Index oversampling = std::min<Eigen::Index>(10, max_rank - o.rank);
    summary = adagio::randomized_top_svd(centered, o.rank, oversampling, 2,
                                         adagio::derive_seed(global.seed, "spectral"))
                  .second;
  } else {
    summary = adagio::exact_top_svd(centered, 1).second;
  }

  if (!o.spectrum_out.empty()) {
    std::string csv = "index,singular_value\n";
    char buf[64];
    for (Eigen::Index i = 0; i < summary.singular_values.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%lld,%.17g\n", static_cast<long long>(i),
                    summary.singular_values(i));
      csv += buf;
    }
    write_output(o.spectrum_out, csv);
  }

  emit_json(global, json{{"stable_rank", adagio::stable_rank(summary)},
                         {"n_singular_values", summary.singular_values.size()},
                         {"approximate", summary.approximate}});
}

// ---------------------------------------------------------------------------
// knn retrieval harness

struct KnnOpts {
  std::string database;
  bool db_has_header = false;
  int db_label_column = -1;
  std::vector<std::string> queries;  // several files = one object each
  bool queries_has_header = false;
  int group_column = -1;
  int k = 10;
  std::string model;
  std::uint64_t tie_seed = 0;
  bool tie_seed_given = false;
};

void run_knn(const GlobalOpts& global, const KnnOpts& o) {
  if (o.db_label_column < 0) {
    throw std::invalid_argument("--db-label-column is required (database labels)");
  }
  if (o.group_column >= 0 && o.queries.size() != 1) {
    throw std::invalid_argument("--group-column expects a single --queries file");
  }
  PointCloud database = adagio::load_csv(o.database, o.db_has_header, o.db_label_column);

  std::optional<adagio::AdagioModel> model;
  if (!o.model.empty()) {
    model = adagio::load_model(o.model);
    database = adagio::transform_all(*model, database);
  }

  // One descriptor cloud per query object: either split one file by its
  // group column (group value = true label) or take each file as an object.
  std::vector<std::pair<int, PointCloud>> objects;
  const bool has_truth = o.group_column >= 0;
  if (has_truth) {
    const PointCloud queries =
        adagio::load_csv(o.queries.front(), o.queries_has_header, o.group_column);
    std::map<int, std::vector<Eigen::Index>> groups;
    for (Eigen::Index i = 0; i < queries.n(); ++i) {
      groups[(*queries.labels)[static_cast<std::size_t>(i)]].push_back(i);
    }
    for (const auto& [group, rows] : groups) {
      PointCloud object;
      object.data.resize(static_cast<Eigen::Index>(rows.size()), queries.d());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        object.data.row(static_cast<Eigen::Index>(i)) = queries.data.row(rows[i]);
      }
      objects.emplace_back(group, std::move(object));
    }
  } else {
    for (std::size_t f = 0; f < o.queries.size(); ++f) {
      objects.emplace_back(static_cast<int>(f),
                           adagio::load_csv(o.queries[f], o.queries_has_header));
    }
  }

  const std::uint64_t tie_seed =
      o.tie_seed_given ? o.tie_seed : adagio::derive_seed(global.seed, "ties");

  const auto t0 = Clock::now();
  json per_object = json::array();
  std::uint64_t correct = 0;
  for (auto& [group, object] : objects) {
    if (model) object = adagio::transform_all(*model, object);
    const int predicted = adagio::majority_classify(
        object, database, o.k, adagio::mix64(tie_seed ^ static_cast<std::uint64_t>(group)));
    if (has_truth && predicted == group) ++correct;
    per_object.push_back(json{{"group", group},
                              {"predicted", predicted},
                              {"n_descriptors", object.n()}});
  }
  const double query_seconds = seconds_since(t0);

  json doc{{"k", o.k},
           {"n_database", database.n()},
           {"n_objects", objects.size()},
           {"per_object", per_object},
           {"timing", {{"query_seconds", query_seconds}}}};
  if (has_truth) {
    doc["accuracy"] = static_cast<double>(correct) / static_cast<double>(objects.size());
  } else {
    doc["accuracy"] = nullptr;
  }
  emit_json(global, doc);
}

// ---------------------------------------------------------------------------
// ssl classification harness

struct SslOpts {
  InputOpts in;
  int k = 30;
  int folds = 10;
  std::string model;
  std::string weights = "binary";
};

void run_ssl(const GlobalOpts& global, const SslOpts& o) {
  const PointCloud cloud = load_input(o.in);
  if (!cloud.has_labels()) {
    throw std::invalid_argument("ssl needs labeled input (--label-column or --idx-labels)");
  }
  const adagio::EdgeWeighting weighting = o.weights == "gaussian"
                                              ? adagio::EdgeWeighting::gaussian
                                              : adagio::EdgeWeighting::binary;
  if (o.weights != "binary" && o.weights != "gaussian") {
    throw std::invalid_argument("--weights must be binary or gaussian");
  }

  std::optional<adagio::AdagioModel> model;
  if (!o.model.empty()) model = adagio::load_model(o.model);

  const auto t0 = Clock::now();
  const adagio::ClassificationResult result = adagio::cross_validate(
      cloud, o.folds, o.k, model ? &*model : nullptr, global.seed, weighting);
  const double total_seconds = seconds_since(t0);

  json per_class = json::array();
  for (std::size_t c = 0; c < result.per_class.size(); ++c) {
    const adagio::ConfusionCounts& counts = result.per_class[c];
    per_class.push_back(json{{"label", result.class_labels[c]},
                             {"tp", counts.tp},
                             {"tn", counts.tn},
                             {"fp", counts.fp},
                             {"fn", counts.fn}});
  }
  emit_json(global, json{{"mean_error", *result.error},
                         {"accuracy", *result.accuracy},
                         {"per_fold", result.per_fold},
                         {"per_class", per_class},
                         {"fallback_components", result.fallback_components},
                         {"folds", o.folds},
                         {"k", o.k},
                         {"weights", o.weights},
                         {"timing", {{"total_seconds", total_seconds}}}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adagio: near-isometric linear embeddings and evaluation tools"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "master seed; per-purpose sub-seeds derive from it")
      ->capture_default_str();
  app.add_option("--threads", global.threads, "worker thread budget (0 = all cores)")
      ->envname("ADAGIO_THREADS")
      ->capture_default_str();
  app.add_option("--output", global.output, "output path ('-' = stdout)")
      ->capture_default_str();
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  FitOpts fit_opts;
  CLI::App* fit = app.add_subcommand("fit", "fit an embedding model");
  fit->fallthrough();
  add_input_flags(fit, fit_opts.in);
  fit->add_option("--target-dim", fit_opts.target_dim, "output dimension r (s = floor(r/2))");
  fit->add_option("--split", fit_opts.split, "explicit 's,k' split");
  fit->add_option("--epsilon", fit_opts.epsilon, "size the JL block via the union-bound formula");
  fit->add_option("--gamma", fit_opts.gamma, "failure probability for --epsilon")
      ->capture_default_str();
  fit->add_option("--jl-multiplier", fit_opts.jl_multiplier,
                  "scale the --epsilon dimension formula (practical runs use < 1)")
      ->capture_default_str();
  fit->add_option("--pca-dims", fit_opts.pca_dims,
                  "principal components kept alongside --epsilon")
      ->capture_default_str();
  fit->add_option("--backend", fit_opts.backend, "spectral backend")
      ->check(CLI::IsMember({"exact", "randomized"}))
      ->capture_default_str();
  fit->add_option("--model-out", fit_opts.model_out, "model file to write")->required();
  fit->callback([&] { adagio::set_thread_budget(global.threads); run_fit(global, fit_opts); });

  TransformOpts transform_opts;
  CLI::App* transform = app.add_subcommand("transform", "embed a cloud with a fitted model");
  transform->fallthrough();
  add_input_flags(transform, transform_opts.in);
  transform->add_option("--model", transform_opts.model, "model file")->required();
  transform->callback([&] { adagio::set_thread_budget(global.threads); run_transform(global, transform_opts); });

  DistortOpts distort_opts;
  CLI::App* distort = app.add_subcommand("distort", "pairwise distortion report");
  distort->fallthrough();
  distort->add_option("--original", distort_opts.original.path, "original cloud")->required();
  distort->add_option("--input-format", distort_opts.original.format, "original format")
      ->check(CLI::IsMember({"csv", "idx"}))
      ->capture_default_str();
  distort->add_flag("--has-header", distort_opts.original.has_header, "skip a CSV header line");
  distort->add_option("--label-column", distort_opts.original.label_column,
                      "CSV label column of the original");
  distort->add_option("--idx-labels", distort_opts.original.idx_labels, "IDX label file");
  distort->add_option("--embedded", distort_opts.embedded, "embedded cloud CSV");
  distort->add_flag("--embedded-has-labels", distort_opts.embedded_has_labels,
                    "embedded CSV carries a trailing label column");
  distort->add_option("--model", distort_opts.model, "embed the original on the fly");
  distort->add_option("--mode", distort_opts.mode, "'all', 'sample:M', or 'auto' (all pairs up to n=5000)")
      ->capture_default_str();
  distort->add_option("--bins", distort_opts.bins, "histogram bins")->capture_default_str();
  distort->add_option("--hist-max", distort_opts.hist_max, "histogram range upper edge")
      ->capture_default_str();
  distort->callback([&] { adagio::set_thread_budget(global.threads); run_distort(global, distort_opts); });

  SweepOpts sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "dimension-distortion trade-off");
  sweep->fallthrough();
  add_input_flags(sweep, sweep_opts.in);
  sweep->add_option("--dims", sweep_opts.dims, "target dimensions")->delimiter(',');
  sweep->add_option("--methods", sweep_opts.methods, "methods to sweep")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--seeds", sweep_opts.seeds, "seeds (default: the global --seed)")
      ->delimiter(',');
  sweep->add_option("--eval-mode", sweep_opts.eval_mode, "'all' or 'sample:M'")
      ->capture_default_str();
  sweep->add_option("--delta", sweep_opts.delta,
                    "find the minimal dimension reaching this max distortion");
  sweep->add_option("--r-min", sweep_opts.r_min, "search lower bound for --delta")
      ->capture_default_str();
  sweep->add_option("--r-max", sweep_opts.r_max, "search upper bound for --delta (0 = d)")
      ->capture_default_str();
  sweep->add_option("--external-matrix", sweep_opts.external_matrix,
                    "CSV of an r x d embedding matrix for method 'external'");
  sweep->callback([&] { adagio::set_thread_budget(global.threads); run_sweep(global, sweep_opts); });

  StableRankOpts stablerank_opts;
  CLI::App* stablerank = app.add_subcommand("stablerank", "stable rank of the centered data");
  stablerank->fallthrough();
  add_input_flags(stablerank, stablerank_opts.in);
  stablerank->add_option("--rank", stablerank_opts.rank,
                         "truncate to this rank via the randomized backend (0 = full exact)")
      ->capture_default_str();
  stablerank->add_option("--spectrum-out", stablerank_opts.spectrum_out,
                         "also write the spectrum as CSV");
  stablerank->callback([&] { adagio::set_thread_budget(global.threads); run_stablerank(global, stablerank_opts); });

  KnnOpts knn_opts;
  CLI::App* knn = app.add_subcommand("knn", "majority-vote retrieval accuracy");
  knn->fallthrough();
  knn->add_option("--database", knn_opts.database, "database descriptors CSV")->required();
  knn->add_flag("--db-has-header", knn_opts.db_has_header, "database CSV has a header");
  knn->add_option("--db-label-column", knn_opts.db_label_column, "database label column")
      ->required();
  knn->add_option("--queries", knn_opts.queries, "query descriptors CSV (repeat for one object per file)")->required();
  knn->add_flag("--queries-has-header", knn_opts.queries_has_header, "queries CSV has a header");
  knn->add_option("--group-column", knn_opts.group_column,
                  "queries column grouping descriptors per object (value = true label)");
  knn->add_option("--k", knn_opts.k, "neighbors per query descriptor")->capture_default_str();
  knn->add_option("--model", knn_opts.model, "embed database and queries first");
  knn->add_option("--tie-seed", knn_opts.tie_seed, "tie-break seed (default derives from --seed)")
      ->each([&](const std::string&) { knn_opts.tie_seed_given = true; });
  knn->callback([&] { adagio::set_thread_budget(global.threads); run_knn(global, knn_opts); });

  SslOpts ssl_opts;
  CLI::App* ssl = app.add_subcommand("ssl", "cross-validated label propagation");
  ssl->fallthrough();
  add_input_flags(ssl, ssl_opts.in);
  ssl->add_option("--k", ssl_opts.k, "k-NN graph parameter")->capture_default_str();
  ssl->add_option("--folds", ssl_opts.folds, "cross-validation folds")->capture_default_str();
  ssl->add_option("--model", ssl_opts.model, "embed the cloud first");
  ssl->add_option("--weights", ssl_opts.weights, "edge weighting")
      ->check(CLI::IsMember({"binary", "gaussian"}))
      ->capture_default_str();
  ssl->callback([&] { adagio::set_thread_budget(global.threads); run_ssl(global, ssl_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const adagio::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const adagio::IoError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
