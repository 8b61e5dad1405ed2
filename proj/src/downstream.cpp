#include "adagio/downstream.hpp"

#include "adagio/errors.hpp"
#include "adagio/parallel.hpp"
#include "adagio/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace adagio {

namespace {

// k smallest (distance, index) pairs for one point, ties toward the smaller
// index; `skip` excludes the point itself in graph construction.
std::vector<std::pair<Eigen::Index, double>> nearest_rows(const PointCloud& cloud,
                                                          const Vector& query, int k,
                                                          Eigen::Index skip) {
  std::vector<std::pair<double, Eigen::Index>> all;
  all.reserve(static_cast<std::size_t>(cloud.n()));
  for (Eigen::Index i = 0; i < cloud.n(); ++i) {
    if (i == skip) continue;
    const double dist = (cloud.data.row(i).transpose() - query).norm();
    all.emplace_back(dist, i);
  }
  const auto kth = all.begin() + std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(all.size()));
  std::partial_sort(all.begin(), kth, all.end());
  std::vector<std::pair<Eigen::Index, double>> out;
  out.reserve(static_cast<std::size_t>(kth - all.begin()));
  for (auto it = all.begin(); it != kth; ++it) out.emplace_back(it->second, it->first);
  return out;
}

int majority_label(const std::map<int, std::uint64_t>& counts) {
  std::uint64_t best = 0;
  for (const auto& [label, count] : counts) best = std::max(best, count);
  for (const auto& [label, count] : counts) {
    if (count == best) return label;  // lowest label among the tied majority
  }
  return 0;
}

}  // namespace

std::vector<std::pair<Eigen::Index, double>> knn_query(const PointCloud& database,
                                                       const Vector& query, int k) {
  if (k < 1 || k > database.n()) {
    throw std::invalid_argument("knn_query: k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(database.n()) + "]");
  }
  if (query.size() != database.d()) {
    throw std::invalid_argument("knn_query: query dimension mismatch");
  }
  return nearest_rows(database, query, k, -1);
}

int majority_classify(const PointCloud& query_descriptors, const PointCloud& database, int k,
                      std::uint64_t tie_seed) {
  if (!database.has_labels()) {
    throw std::invalid_argument("majority_classify: database has no labels");
  }
  if (query_descriptors.n() == 0) {
    throw std::invalid_argument("majority_classify: no query descriptors");
  }

  std::map<int, std::uint64_t> counts;
  for (Eigen::Index q = 0; q < query_descriptors.n(); ++q) {
    const auto neighbors = knn_query(database, query_descriptors.data.row(q).transpose(), k);
    for (const auto& [index, dist] : neighbors) {
      ++counts[(*database.labels)[static_cast<std::size_t>(index)]];
    }
  }

  std::uint64_t best = 0;
  for (const auto& [label, count] : counts) best = std::max(best, count);
  std::vector<int> tied;
  for (const auto& [label, count] : counts) {
    if (count == best) tied.push_back(label);
  }
  if (tied.size() == 1) return tied.front();
  SeededRng rng(tie_seed);
  return tied[static_cast<std::size_t>(rng.below(tied.size()))];
}

KnnGraph build_knn_graph(const PointCloud& cloud, int k, EdgeWeighting weighting) {
  if (k < 1 || k >= cloud.n()) {
    throw std::invalid_argument("build_knn_graph: k = " + std::to_string(k) +
                                " outside [1, n)");
  }

  const auto n = static_cast<std::size_t>(cloud.n());
  std::vector<std::vector<std::pair<Eigen::Index, double>>> neighbor_lists(n);
  parallel_chunks(n, [&](std::size_t u) {
    neighbor_lists[u] = nearest_rows(cloud, cloud.data.row(static_cast<Eigen::Index>(u)).transpose(),
                                     k, static_cast<Eigen::Index>(u));
  });

  double sigma = 0.0;
  if (weighting == EdgeWeighting::gaussian) {
    std::vector<double> distances;
    distances.reserve(n * static_cast<std::size_t>(k));
    for (const auto& list : neighbor_lists)
      for (const auto& [v, dist] : list) distances.push_back(dist);
    std::sort(distances.begin(), distances.end());
    sigma = distances[distances.size() / 2];
  }

  std::map<std::pair<int, int>, double> edge_set;
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& [v, dist] : neighbor_lists[u]) {
      const int a = std::min<int>(static_cast<int>(u), static_cast<int>(v));
      const int b = std::max<int>(static_cast<int>(u), static_cast<int>(v));
      double weight = 1.0;
      if (weighting == EdgeWeighting::gaussian && sigma > 0.0) {
        weight = std::exp(-dist * dist / (sigma * sigma));
      }
      edge_set.emplace(std::make_pair(a, b), weight);
    }
  }

  KnnGraph graph;
  graph.n = cloud.n();
  graph.k = k;
  graph.edges.reserve(edge_set.size());
  for (const auto& [uv, weight] : edge_set) {
    graph.edges.push_back({uv.first, uv.second, weight});
  }
  return graph;
}

ClassificationResult harmonic_propagate(const KnnGraph& graph,
                                        const std::vector<Eigen::Index>& labeled_ids,
                                        const std::vector<int>& labels, int n_classes) {
  if (labeled_ids.empty()) {
    throw std::invalid_argument("harmonic_propagate: empty labeled set");
  }
  if (labeled_ids.size() != labels.size()) {
    throw std::invalid_argument("harmonic_propagate: labeled_ids and labels sizes differ");
  }
  if (n_classes < 2) throw std::invalid_argument("harmonic_propagate: need n_classes >= 2");

  const auto n = static_cast<std::size_t>(graph.n);
  std::vector<int> given(n, -1);
  for (std::size_t i = 0; i < labeled_ids.size(); ++i) {
    const Eigen::Index id = labeled_ids[i];
    if (id < 0 || id >= graph.n) {
      throw std::invalid_argument("harmonic_propagate: node id out of range");
    }
    if (labels[i] < 0 || labels[i] >= n_classes) {
      throw std::invalid_argument("harmonic_propagate: class id out of range");
    }
    given[static_cast<std::size_t>(id)] = labels[i];
  }

  // Reachability from labeled nodes; components without one get the global
  // majority label via the documented fallback.
  std::vector<std::vector<std::pair<int, double>>> adjacency(n);
  for (const auto& edge : graph.edges) {
    adjacency[static_cast<std::size_t>(edge.u)].emplace_back(edge.v, edge.weight);
    adjacency[static_cast<std::size_t>(edge.v)].emplace_back(edge.u, edge.weight);
  }
  std::vector<char> reached(n, 0);
  std::vector<int> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (given[i] >= 0 && !reached[i]) {
      reached[i] = 1;
      queue.push_back(static_cast<int>(i));
    }
  }
  while (!queue.empty()) {
    const int u = queue.back();
    queue.pop_back();
    for (const auto& [v, w] : adjacency[static_cast<std::size_t>(u)]) {
      if (!reached[static_cast<std::size_t>(v)]) {
        reached[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
  }

  std::map<int, std::uint64_t> label_counts;
  for (const int c : labels) ++label_counts[c];
  const int fallback_label = majority_label(label_counts);

  int fallback_components = 0;
  {
    std::vector<char> visited(reached.begin(), reached.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (visited[i]) continue;
      ++fallback_components;
      visited[i] = 1;
      std::vector<int> stack{static_cast<int>(i)};
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : adjacency[static_cast<std::size_t>(u)]) {
          if (!visited[static_cast<std::size_t>(v)]) {
            visited[static_cast<std::size_t>(v)] = 1;
            stack.push_back(v);
          }
        }
      }
    }
  }
  if (fallback_components > 0) {
    std::cerr << "harmonic_propagate: warning: " << fallback_components
              << " component(s) contain no labeled node; assigning the majority label\n";
  }

  // Unknowns: reachable unlabeled nodes.
  std::vector<Eigen::Index> unknown;
  std::vector<Eigen::Index> position(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (given[i] < 0 && reached[i]) {
      position[i] = static_cast<Eigen::Index>(unknown.size());
      unknown.push_back(static_cast<Eigen::Index>(i));
    }
  }

  const auto m = static_cast<Eigen::Index>(unknown.size());
  Eigen::MatrixXd unknown_laplacian = Eigen::MatrixXd::Zero(m, m);
  // boundary_weight(row, node) accumulates w_uv for labeled neighbors v of u.
  std::vector<std::vector<std::pair<std::size_t, double>>> boundary(
      static_cast<std::size_t>(m));
  for (const auto& edge : graph.edges) {
    const auto u = static_cast<std::size_t>(edge.u);
    const auto v = static_cast<std::size_t>(edge.v);
    const Eigen::Index pu = position[u];
    const Eigen::Index pv = position[v];
    if (pu >= 0) unknown_laplacian(pu, pu) += edge.weight;
    if (pv >= 0) unknown_laplacian(pv, pv) += edge.weight;
    if (pu >= 0 && pv >= 0) {
      unknown_laplacian(pu, pv) -= edge.weight;
      unknown_laplacian(pv, pu) -= edge.weight;
    } else if (pu >= 0 && given[v] >= 0) {
      boundary[static_cast<std::size_t>(pu)].emplace_back(v, edge.weight);
    } else if (pv >= 0 && given[u] >= 0) {
      boundary[static_cast<std::size_t>(pv)].emplace_back(u, edge.weight);
    }
  }

  Eigen::LDLT<Eigen::MatrixXd> solver;
  if (m > 0) {
    solver.compute(unknown_laplacian);
    if (solver.info() != Eigen::Success) {
      throw NumericError("harmonic_propagate: factorization of the unlabeled block failed");
    }
  }

  const int n_systems = n_classes == 2 ? 1 : n_classes;
  Eigen::MatrixXd solved(std::max<Eigen::Index>(m, 1), n_systems);
  for (int c = 0; c < n_systems && m > 0; ++c) {
    const int target = n_classes == 2 ? 1 : c;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (Eigen::Index row = 0; row < m; ++row) {
      for (const auto& [node, weight] : boundary[static_cast<std::size_t>(row)]) {
        if (given[node] == target) rhs(row) += weight;
      }
    }
    solved.col(c) = solver.solve(rhs);
  }

  ClassificationResult result;
  result.fallback_components = fallback_components;
  result.predicted.assign(n, fallback_label);
  result.scores.setZero(graph.n, n_systems);
  for (std::size_t i = 0; i < n; ++i) {
    if (given[i] >= 0) {
      result.predicted[i] = given[i];
      for (int c = 0; c < n_systems; ++c) {
        const int target = n_classes == 2 ? 1 : c;
        result.scores(static_cast<Eigen::Index>(i), c) = given[i] == target ? 1.0 : 0.0;
      }
    } else if (position[i] >= 0) {
      const Eigen::Index row = position[i];
      result.scores.row(static_cast<Eigen::Index>(i)) = solved.row(row);
      if (n_classes == 2) {
        result.predicted[i] = solved(row, 0) >= 0.5 ? 1 : 0;
      } else {
        int best_class = 0;
        double best_score = solved(row, 0);
        for (int c = 1; c < n_classes; ++c) {
          if (solved(row, c) > best_score) {
            best_score = solved(row, c);
            best_class = c;
          }
        }
        result.predicted[i] = best_class;
      }
    } else {
      for (int c = 0; c < n_systems; ++c) {
        const int target = n_classes == 2 ? 1 : c;
        result.scores(static_cast<Eigen::Index>(i), c) = fallback_label == target ? 1.0 : 0.0;
      }
    }
  }
  return result;
}

ClassificationResult cross_validate(const PointCloud& cloud, int folds, int k,
                                    const AdagioModel* model, std::uint64_t seed,
                                    EdgeWeighting weighting) {
  if (!cloud.has_labels()) throw std::invalid_argument("cross_validate: cloud has no labels");
  if (folds < 2) throw std::invalid_argument("cross_validate: need folds >= 2");
  if (folds > cloud.n()) throw std::invalid_argument("cross_validate: more folds than points");

  const std::vector<int>& raw_labels = *cloud.labels;
  std::vector<int> class_labels(raw_labels.begin(), raw_labels.end());
  std::sort(class_labels.begin(), class_labels.end());
  class_labels.erase(std::unique(class_labels.begin(), class_labels.end()), class_labels.end());
  const int n_classes = static_cast<int>(class_labels.size());
  if (n_classes < 2) throw std::invalid_argument("cross_validate: need at least 2 classes");

  std::map<int, int> class_index;
  for (int c = 0; c < n_classes; ++c) class_index[class_labels[static_cast<std::size_t>(c)]] = c;

  const PointCloud working = model != nullptr ? transform_all(*model, cloud) : cloud;
  const KnnGraph graph = build_knn_graph(working, k, weighting);

  // Stratified fold assignment: shuffle each class, deal round-robin.
  const auto n = static_cast<std::size_t>(cloud.n());
  std::vector<int> fold_of(n, 0);
  SeededRng rng(derive_seed(seed, "folds"));
  for (int c = 0; c < n_classes; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (class_index.at(raw_labels[i]) == c) members.push_back(i);
    }
    if (members.size() < static_cast<std::size_t>(folds)) {
      std::cerr << "cross_validate: warning: class " << class_labels[static_cast<std::size_t>(c)]
                << " has " << members.size() << " members for " << folds
                << " folds; assignment is best-effort\n";
    }
    for (std::size_t i = members.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.below(i));
      std::swap(members[i - 1], members[j]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      fold_of[members[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }
  }

  ClassificationResult result;
  result.predicted.assign(n, -1);
  result.class_labels = class_labels;
  result.per_class.assign(static_cast<std::size_t>(n_classes), ConfusionCounts{});

  for (int f = 0; f < folds; ++f) {
    std::vector<Eigen::Index> labeled_ids;
    std::vector<int> labeled_classes;
    std::vector<std::size_t> held_out;
    for (std::size_t i = 0; i < n; ++i) {
      if (fold_of[i] == f) {
        held_out.push_back(i);
      } else {
        labeled_ids.push_back(static_cast<Eigen::Index>(i));
        labeled_classes.push_back(class_index.at(raw_labels[i]));
      }
    }
    if (held_out.empty()) continue;

    const ClassificationResult fold_run =
        harmonic_propagate(graph, labeled_ids, labeled_classes, n_classes);
    result.fallback_components += fold_run.fallback_components;

    std::size_t wrong = 0;
    for (const std::size_t i : held_out) {
      const int predicted_class = fold_run.predicted[i];
      const int true_class = class_index.at(raw_labels[i]);
      result.predicted[i] = class_labels[static_cast<std::size_t>(predicted_class)];
      if (predicted_class != true_class) ++wrong;
      for (int c = 0; c < n_classes; ++c) {
        ConfusionCounts& counts = result.per_class[static_cast<std::size_t>(c)];
        const bool is_true = true_class == c;
        const bool is_predicted = predicted_class == c;
        if (is_true && is_predicted) ++counts.tp;
        else if (!is_true && is_predicted) ++counts.fp;
        else if (is_true && !is_predicted) ++counts.fn;
        else ++counts.tn;
      }
    }
    result.per_fold.push_back(static_cast<double>(wrong) / static_cast<double>(held_out.size()));
  }

  const double mean_error =
      std::accumulate(result.per_fold.begin(), result.per_fold.end(), 0.0) /
      static_cast<double>(result.per_fold.size());
  result.error = mean_error;
  result.accuracy = 1.0 - mean_error;
  return result;
}

}  // namespace adagio
