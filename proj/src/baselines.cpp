#include "valleys/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "valleys/rng.hpp"

namespace valleys {
namespace {

double dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = a[i] - b[i];
    s += r * r;
  }
  return s;
}

}  // namespace

void KnnModel::validate() const {
  if (points.empty()) throw std::invalid_argument("KnnModel: empty model");
  if (k < 1 || k % 2 == 0) {
    throw std::invalid_argument("KnnModel: k must be positive and odd");
  }
  if (static_cast<std::size_t>(k) > points.size()) {
    throw std::invalid_argument("KnnModel: k exceeds point count");
  }
}

std::vector<int> knn_classify(const KnnModel& model, const Vec& x, int n) {
  model.validate();
  std::vector<std::pair<double, int>> d2;  // (distance², label)
  d2.reserve(model.points.size());
  for (const auto& p : model.points) {
    d2.emplace_back(dist2(p.x, x), p.label);
  }
  const std::size_t k = static_cast<std::size_t>(model.k);
  std::partial_sort(d2.begin(), d2.begin() + k, d2.end());

  struct Tally {
    long votes = 0;
    double dist_sum = 0.0;
  };
  std::map<int, Tally> tally;
  for (std::size_t i = 0; i < k; ++i) {
    auto& t = tally[d2[i].second];
    ++t.votes;
    t.dist_sum += std::sqrt(d2[i].first);
  }
  std::vector<std::pair<int, Tally>> ranked(tally.begin(), tally.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.votes != b.second.votes) return a.second.votes > b.second.votes;
    const double da = a.second.dist_sum / a.second.votes;
    const double db = b.second.dist_sum / b.second.votes;
    if (da != db) return da < db;
    return a.first < b.first;
  });
  if (n < 1 || static_cast<std::size_t>(n) > ranked.size()) {
    // Classes absent from the neighbor set cannot be ranked; pad from the
    // full label set, by label order, after the voted ones.
    std::map<int, bool> seen;
    for (const auto& r : ranked) seen[r.first] = true;
    std::map<int, bool> all;
    for (const auto& p : model.points) all.emplace(p.label, false);
    if (n < 1 || static_cast<std::size_t>(n) > all.size()) {
      throw std::invalid_argument("knn_classify: n out of range");
    }
    for (const auto& [label, _] : all) {
      if (!seen.count(label)) ranked.emplace_back(label, Tally{});
    }
  }
  std::vector<int> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(ranked[i].first);
  return out;
}

KmeansModel kmeans_fit(const std::vector<Vec>& xs, int k, int max_iters,
                       std::uint64_t seed) {
  if (k < 1 || static_cast<std::size_t>(k) > xs.size()) {
    throw std::invalid_argument("kmeans_fit: need 1 <= k <= |X|");
  }
  Rng rng(seed);
  KmeansModel model;
  model.k = k;

  // k-means++ seeding: first centroid uniform, the rest D²-weighted.
  std::vector<double> min_d2(xs.size(), std::numeric_limits<double>::max());
  model.centroids.push_back(xs[rng.uniform_index(xs.size())]);
  while (model.centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      min_d2[i] = std::min(min_d2[i], dist2(xs[i], model.centroids.back()));
      total += min_d2[i];
    }
    double r = rng.uniform01() * total;
    std::size_t pick = xs.size() - 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      r -= min_d2[i];
      if (r <= 0.0) {
        pick = i;
        break;
      }
    }
    model.centroids.push_back(xs[pick]);
  }

  const std::size_t d = xs.front().size();
  std::vector<int> assign(xs.size(), -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::max();
      for (int j = 0; j < k; ++j) {
        const double dj = dist2(xs[i], model.centroids[j]);
        if (dj < best_d) {
          best_d = dj;
          best = j;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    model.iterations = iter + 1;
    if (!changed && iter > 0) {
      model.converged = true;
      break;
    }

    std::vector<Vec> sums(k, Vec(d, 0.0));
    std::vector<long> counts(k, 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      axpy(1.0, xs[i], sums[assign[i]]);
      ++counts[assign[i]];
    }
    for (int j = 0; j < k; ++j) {
      if (counts[j] == 0) {
        // Re-seed an empty cluster to the point farthest from its centroid.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const double di = dist2(xs[i], model.centroids[assign[i]]);
          if (di > far_d) {
            far_d = di;
            far = i;
          }
        }
        model.centroids[j] = xs[far];
      } else {
        model.centroids[j] = scaled(sums[j], 1.0 / counts[j]);
      }
    }
  }

  model.inertia = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    model.inertia += dist2(xs[i], model.centroids[kmeans_assign(model, xs[i])]);
  }
  return model;
}

int kmeans_assign(const KmeansModel& model, const Vec& x) {
  int best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (int j = 0; j < model.k; ++j) {
    const double dj = dist2(x, model.centroids[j]);
    if (dj < best_d) {
      best_d = dj;
      best = j;
    }
  }
  return best;
}

KmeansConfusion kmeans_confusion(const KmeansModel& model,
                                 const std::vector<LabeledSample>& samples) {
  KmeansConfusion out;
  std::map<int, std::size_t> index;
  for (const auto& s : samples) index.emplace(s.label, 0);
  for (auto& [label, idx] : index) {
    idx = out.labels.size();
    out.labels.push_back(label);
  }
  out.counts.assign(out.labels.size(),
                    std::vector<long>(static_cast<std::size_t>(model.k), 0));
  for (const auto& s : samples) {
    ++out.counts[index[s.label]][static_cast<std::size_t>(
        kmeans_assign(model, s.x))];
  }

  out.majority_cluster.assign(out.labels.size(), -1);
  std::map<int, std::vector<int>> claims;  // cluster -> classes
  for (std::size_t r = 0; r < out.labels.size(); ++r) {
    long total = 0;
    long best = -1;
    int best_j = 0;
    int heavy = 0;  // clusters holding >= 25% of this class
    for (int j = 0; j < model.k; ++j) {
      const long c = out.counts[r][static_cast<std::size_t>(j)];
      total += c;
      if (c > best) {
        best = c;
        best_j = j;
      }
    }
    for (int j = 0; j < model.k; ++j) {
      if (4 * out.counts[r][static_cast<std::size_t>(j)] >= total && total > 0 &&
          out.counts[r][static_cast<std::size_t>(j)] > 0) {
        ++heavy;
      }
    }
    out.majority_cluster[r] = best_j;
    claims[best_j].push_back(out.labels[r]);
    if (heavy >= 2) out.split_classes.push_back(out.labels[r]);
  }
  for (const auto& [cluster, classes] : claims) {
    if (classes.size() >= 2) out.shared_clusters.push_back(cluster);
  }
  return out;
}

}  // namespace valleys
