#pragma once

#include "adagio/embed.hpp"
#include "adagio/point_cloud.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace adagio {

// Symmetrized-union k-nearest-neighbor graph: edge (u, v) present when either
// endpoint is among the other's k nearest. Undirected, no self-loops, no
// duplicates, positive weights.
struct KnnGraph {
  struct Edge {
    int u = 0;  // u < v
    int v = 0;
    double weight = 1.0;
  };
  Eigen::Index n = 0;
  int k = 0;
  std::vector<Edge> edges;
};

// Binary weights (w = 1) are the default; the Gaussian kernel option uses
// w = exp(-dist^2 / sigma^2) with sigma the median k-NN distance.
enum class EdgeWeighting { binary, gaussian };

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

struct ClassificationResult {
  std::vector<int> predicted;  // one entry per point/node
  std::optional<double> accuracy;
  std::optional<double> error;
  std::vector<double> per_fold;             // fold errors (cross_validate only)
  std::vector<ConfusionCounts> per_class;   // one-vs-rest counts per class
  std::vector<int> class_labels;            // ordering of per_class
  int fallback_components = 0;  // unlabeled components assigned by majority fallback
  // Harmonic values per node and per solved system (one column for binary
  // tasks, one per class otherwise); labeled nodes hold their boundary
  // indicators. Filled by harmonic_propagate, empty after cross_validate.
  Matrix scores;
};

// The k nearest database rows by Euclidean distance, ascending; distance
// ties break toward the smaller index.
std::vector<std::pair<Eigen::Index, double>> knn_query(const PointCloud& database,
                                                       const Vector& query, int k);

// Pools the k-NN labels of every query descriptor into one multiset and
// returns the modal label; ties are resolved uniformly via tie_seed.
int majority_classify(const PointCloud& query_descriptors, const PointCloud& database, int k,
                      std::uint64_t tie_seed);

KnnGraph build_knn_graph(const PointCloud& cloud, int k,
                         EdgeWeighting weighting = EdgeWeighting::binary);

// Zhu-Ghahramani-Lafferty harmonic propagation: per class (one-vs-rest),
// minimizes sum w_uv (x_u - x_v)^2 with labeled values clamped, solving the
// unlabeled block L_UU x_U = -L_UL x_L by a dense symmetric factorization.
// Binary tasks threshold at x >= 1/2; multiclass takes the argmax with
// lowest-class-id tie-break. Components containing no labeled node are
// assigned the global majority label and counted in fallback_components.
// labels[i] is the class id (in [0, n_classes)) of node labeled_ids[i].
ClassificationResult harmonic_propagate(const KnnGraph& graph,
                                        const std::vector<Eigen::Index>& labeled_ids,
                                        const std::vector<int>& labels, int n_classes);

// Stratified seeded fold assignment; each fold in turn is treated as
// unlabeled, propagated over a graph built once on the (optionally embedded)
// cloud, and scored. error is the mean fold error, accuracy = 1 - error;
// predictions are reported in the original label alphabet.
ClassificationResult cross_validate(const PointCloud& cloud, int folds = 10, int k = 30,
                                    const AdagioModel* model = nullptr, std::uint64_t seed = 0,
                                    EdgeWeighting weighting = EdgeWeighting::binary);

}  // namespace adagio
