#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "valleys/baselines.hpp"
#include "valleys/rng.hpp"

using namespace valleys;

TEST_CASE("knn: self retrieval and unanimous vote") {
  KnnModel model;
  model.k = 1;
  model.points = {{{0.0, 0.0}, 0}, {{1.0, 0.0}, 1}, {{5.0, 5.0}, 2}};
  CHECK(knn_classify(model, {1.0, 0.0}, 1)[0] == 1);

  model.k = 3;
  model.points = {{{0.0, 0.0}, 0}, {{0.1, 0.0}, 0}, {{0.0, 0.1}, 0},
                  {{9.0, 9.0}, 1}};
  CHECK(knn_classify(model, {0.05, 0.05}, 1)[0] == 0);
}

TEST_CASE("knn: constructed 2-1 vote split with oracle") {
  KnnModel model;
  model.k = 3;
  model.points = {{{0.0}, 0}, {{0.2}, 0}, {{0.3}, 1}, {{5.0}, 1}, {{6.0}, 1}};
  // Neighbors of x=0.1: {0.0 (l0), 0.2 (l0), 0.3 (l1)} → label 0 by 2 votes.
  const auto ranked = knn_classify(model, {0.1}, 2);
  CHECK(ranked[0] == 0);
  CHECK(ranked[1] == 1);
}

TEST_CASE("knn invariance under training permutation; duplicates") {
  Rng rng(8);
  KnnModel model;
  model.k = 5;
  for (int i = 0; i < 40; ++i) {
    model.points.push_back({{rng.normal(), rng.normal()}, i % 3});
  }
  KnnModel shuffled = model;
  std::reverse(shuffled.points.begin(), shuffled.points.end());
  for (int t = 0; t < 25; ++t) {
    const Vec x{rng.normal(), rng.normal()};
    CHECK(knn_classify(model, x, 3) == knn_classify(shuffled, x, 3));
  }

  // Duplicating a training point never flips k=1 classification.
  KnnModel one = model;
  one.k = 1;
  KnnModel dup = one;
  dup.points.push_back(dup.points.front());
  for (int t = 0; t < 25; ++t) {
    const Vec x{rng.normal(), rng.normal()};
    CHECK(knn_classify(one, x, 1)[0] == knn_classify(dup, x, 1)[0]);
  }
}

TEST_CASE("knn validation") {
  KnnModel model;
  model.points = {{{0.0}, 0}};
  model.k = 2;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
  model.k = 3;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
  model.points.clear();
  model.k = 1;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
}

TEST_CASE("kmeans: exact points, two blobs, monotone inertia") {
  // k distinct points: centroids are the points themselves.
  std::vector<Vec> pts{{0.0, 0.0}, {4.0, 0.0}, {0.0, 4.0}};
  const auto exact = kmeans_fit(pts, 3, 50, 1);
  CHECK(exact.inertia == doctest::Approx(0.0));

  // Two tight far-apart blobs: centroids recover the blob means.
  Rng rng(13);
  std::vector<Vec> xs;
  const Vec m1{0.0, 0.0}, m2{20.0, 20.0};
  const double sigma = 0.5;
  const int per = 400;
  for (int i = 0; i < per; ++i) {
    xs.push_back({m1[0] + sigma * rng.normal(), m1[1] + sigma * rng.normal()});
    xs.push_back({m2[0] + sigma * rng.normal(), m2[1] + sigma * rng.normal()});
  }
  const auto model = kmeans_fit(xs, 2, 100, 7);
  REQUIRE(model.centroids.size() == 2);
  const double bound = 4.0 * sigma / std::sqrt(static_cast<double>(per));
  std::vector<Vec> sorted = model.centroids;
  std::sort(sorted.begin(), sorted.end(),
            [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
  CHECK(std::abs(sorted[0][0] - m1[0]) < bound);
  CHECK(std::abs(sorted[0][1] - m1[1]) < bound);
  CHECK(std::abs(sorted[1][0] - m2[0]) < bound);
  CHECK(std::abs(sorted[1][1] - m2[1]) < bound);
  CHECK(model.converged);

  CHECK_THROWS_AS(kmeans_fit(pts, 4, 10, 1), std::invalid_argument);
}

TEST_CASE("kmeans determinism") {
  Rng rng(4);
  std::vector<Vec> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(rng.normal_vector(3));
  const auto a = kmeans_fit(xs, 4, 60, 99);
  const auto b = kmeans_fit(xs, 4, 60, 99);
  CHECK(a.inertia == b.inertia);
  CHECK(a.centroids == b.centroids);
}

TEST_CASE("kmeans confusion counts and diagnostics") {
  // Perfect clustering: permutation structure, no pathologies.
  std::vector<LabeledSample> samples;
  Rng rng(2);
  const std::vector<Vec> means{{0.0, 0.0}, {30.0, 0.0}, {0.0, 30.0}};
  std::vector<Vec> xs;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 100; ++i) {
      Vec x{means[c][0] + rng.normal(), means[c][1] + rng.normal()};
      xs.push_back(x);
      samples.push_back({x, c});
    }
  }
  const auto model = kmeans_fit(xs, 3, 100, 5);
  const auto conf = kmeans_confusion(model, samples);
  CHECK(conf.split_classes.empty());
  CHECK(conf.shared_clusters.empty());
  for (std::size_t r = 0; r < conf.counts.size(); ++r) {
    long total = 0;
    int nonzero = 0;
    for (long v : conf.counts[r]) {
      total += v;
      if (v > 0) ++nonzero;
    }
    CHECK(total == 100);  // row sums are the class counts
    CHECK(nonzero == 1);
  }

  // A class split evenly across two clusters is flagged.
  KmeansModel split;
  split.k = 2;
  split.centroids = {{-5.0, 0.0}, {5.0, 0.0}};
  std::vector<LabeledSample> one_class;
  for (int i = 0; i < 50; ++i) {
    one_class.push_back({{-5.0 + 0.01 * i, 0.0}, 0});
    one_class.push_back({{+5.0 - 0.01 * i, 0.0}, 0});
  }
  const auto conf2 = kmeans_confusion(split, one_class);
  REQUIRE(conf2.split_classes.size() == 1);
  CHECK(conf2.split_classes[0] == 0);
  CHECK(conf2.counts[0][0] == 50);
  CHECK(conf2.counts[0][1] == 50);
}
