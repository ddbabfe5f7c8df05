#pragma once

#include <cstdint>
#include <vector>

#include "valleys/synthdata.hpp"
#include "valleys/vec.hpp"

namespace valleys {

/// Supervised reference: Euclidean k-nearest-neighbor voting.
struct KnnModel {
  std::vector<LabeledSample> points;
  int k = 5;

  void validate() const;
};

/// Classes ranked by vote count among the k nearest neighbors; ties by
/// mean neighbor distance ascending, then label ascending. Returns the
/// first n labels.
std::vector<int> knn_classify(const KnnModel& model, const Vec& x, int n);

struct KmeansModel {
  std::vector<Vec> centroids;
  int k = 0;
  double inertia = 0.0;  ///< sum of squared distances to assigned centroid
  int iterations = 0;
  bool converged = false;
};

/// Lloyd iteration from k-means++ seeding; deterministic given seed. Empty
/// clusters are re-seeded to the farthest point from its centroid.
KmeansModel kmeans_fit(const std::vector<Vec>& xs, int k, int max_iters,
                       std::uint64_t seed);

int kmeans_assign(const KmeansModel& model, const Vec& x);

/// Confusion counts (true class × cluster) plus the majority-mapping
/// pathologies: classes split across clusters and clusters claimed by more
/// than one class.
struct KmeansConfusion {
  std::vector<int> labels;                  ///< row order
  std::vector<std::vector<long>> counts;    ///< labels × k
  std::vector<int> majority_cluster;        ///< per label
  std::vector<int> split_classes;           ///< ≥ 2 clusters hold ≥ 25% each
  std::vector<int> shared_clusters;         ///< majority cluster of ≥ 2 classes
};

KmeansConfusion kmeans_confusion(const KmeansModel& model,
                                 const std::vector<LabeledSample>& samples);

}  // namespace valleys
