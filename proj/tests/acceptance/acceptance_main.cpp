// Acceptance suite: one pass/fail line per criterion, exit code equals the
// number of failed criteria. Heavier than the unit tests; runs full
// training experiments at fixed seeds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "valleys/baselines.hpp"
#include "valleys/evalkit.hpp"
#include "valleys/experiment.hpp"
#include "valleys/geometry.hpp"
#include "valleys/headmap.hpp"
#include "valleys/io.hpp"
#include "valleys/learner.hpp"
#include "valleys/rng.hpp"
#include "valleys/synthdata.hpp"

using namespace valleys;

namespace {

struct SeedRun {
  Pool pool;
  std::vector<LabeledSample> calib;
  std::vector<LabeledSample> test;
  double initial_top1 = 1.0;
  double final_top1 = 1.0;
  double max_rotate_fraction = 0.0;
  double max_rotation_residual = 0.0;
  double wall_seconds = 0.0;
};

LearnerConfig benchmark_learner_config(double sigma, std::uint32_t warmup) {
  LearnerConfig cfg;
  cfg.epsilon = 0.0033 * sigma;
  cfg.phi = 2.0 * sigma;
  cfg.alpha = 0.04;
  cfg.beta = 8.0 * sigma;
  cfg.warmup_shifts = warmup;
  return cfg;
}

/// Train one benchmark seed end to end with probes and rotation audit.
SeedRun run_benchmark_seed(const MixtureSpec& spec, const DomainBox& domain,
                           int planes_per_dim, std::uint32_t warmup,
                           std::uint64_t seed, std::size_t train_size = 10000,
                           std::size_t eval_per_class = 100) {
  const auto t0 = std::chrono::steady_clock::now();
  SeedRun run;
  const std::size_t classes = spec.components.size();
  const auto train_samples = gen_mixture(spec, train_size, seed * 7919 + 1);
  run.calib = gen_mixture(spec, eval_per_class * classes, seed * 7919 + 2);
  run.test = gen_mixture(spec, eval_per_class * classes, seed * 7919 + 3);

  run.pool = init_grid(domain, planes_per_dim, benchmark_learner_config(1.0, warmup));
  run.pool.rotation_observer = [&](const RotationEvent& ev) {
    const double r = std::abs(dot(ev.w_new, ev.c) - ev.theta_new);
    run.max_rotation_residual = std::max(run.max_rotation_residual, r);
  };

  auto top1_of = [&](const Pool& p) {
    const auto errors = probe_pool(p, run.calib, run.test, {1});
    return errors.front().second;
  };
  run.initial_top1 = top1_of(run.pool);

  const std::uint64_t window = 500;
  std::uint64_t last_rotations = 0;
  std::uint64_t processed = 0;
  for (const auto& s : train_samples) {
    step(run.pool, s.x);
    if (++processed % window == 0) {
      const std::uint64_t fired = run.pool.diag.rotations_fired - last_rotations;
      last_rotations = run.pool.diag.rotations_fired;
      const double fraction =
          static_cast<double>(fired) /
          (static_cast<double>(window) * static_cast<double>(run.pool.size()));
      run.max_rotate_fraction = std::max(run.max_rotate_fraction, fraction);
    }
  }
  run.final_top1 = top1_of(run.pool);
  run.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return run;
}

// ---------------------------------------------------------------------------

bool criterion_1_50d_convergence(std::ostringstream& detail,
                                 std::vector<SeedRun>& runs_out) {
  const MixtureSpec spec = two_pair_50d(1.0);
  const DomainBox domain = benchmark_domain(50, 1.0);
  int passes = 0;
  bool runtime_ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SeedRun run = run_benchmark_seed(spec, domain, 7, 100, seed);
    const bool ok = run.initial_top1 >= 0.25 && run.final_top1 <= 0.04;
    passes += ok ? 1 : 0;
    runtime_ok = runtime_ok && run.wall_seconds < 120.0;
    detail << "  seed " << seed << ": initial " << run.initial_top1
           << ", final " << run.final_top1 << ", " << run.wall_seconds
           << " s" << (ok ? "" : "  <-- miss") << '\n';
    runs_out.push_back(std::move(run));
  }
  detail << "  passes " << passes << "/5, runtime ok: " << runtime_ok << '\n';
  return passes >= 4 && runtime_ok;
}

bool criterion_2_2d_migration(std::ostringstream& detail) {
  const MixtureSpec spec = two_pair_2d(1.0);
  const DomainBox domain = benchmark_domain(2, 1.0);
  const double angle_limit = 15.0 * M_PI / 180.0;
  int passes = 0;
  int geometry_passes = 0;
  int error_passes = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SeedRun run = run_benchmark_seed(spec, domain, 4, 100, seed);
    // Within-pair valleys: analytic separator normal e0 through each pair
    // midpoint.
    bool geometry_ok = true;
    for (int pair = 0; pair < 2; ++pair) {
      const Vec mid = scaled(add(spec.components[2 * pair].mean,
                                 spec.components[2 * pair + 1].mean),
                             0.5);
      const Vec normal = unit(sub(spec.components[2 * pair + 1].mean,
                                  spec.components[2 * pair].mean));
      bool found = false;
      for (const auto& h : run.pool.planes) {
        const double cosang = std::abs(dot(h.w, normal));
        const double angle = std::acos(std::min(1.0, cosang));
        const double offset = std::abs(signed_distance(mid, h.w, h.theta));
        if (angle < angle_limit && offset < 0.5) {
          found = true;
          break;
        }
      }
      geometry_ok = geometry_ok && found;
    }
    const bool error_ok = run.final_top1 <= 0.05;
    geometry_passes += geometry_ok ? 1 : 0;
    error_passes += error_ok ? 1 : 0;
    const bool ok = geometry_ok && error_ok;
    passes += ok ? 1 : 0;
    detail << "  seed " << seed << ": valleys " << (geometry_ok ? "ok" : "MISS")
           << ", final top-1 " << run.final_top1 << (ok ? "" : "  <-- miss")
           << '\n';
  }
  detail << "  migration sub-clause " << geometry_passes
         << "/5, top-1 sub-clause " << error_passes << "/5, combined "
         << passes << "/5\n";
  return passes >= 4;
}

bool criterion_3_unsupervised_penalty(std::ostringstream& detail,
                                      const std::vector<SeedRun>& runs) {
  // Same splits as criterion 1: compare against kNN (k=5) trained on the
  // calibration set and evaluated on the identical test set.
  if (runs.empty()) {
    detail << "  no runs available\n";
    return false;
  }
  double worst_penalty = -1.0;
  for (const auto& run : runs) {
    // k = 5 is the gated comparison; 1 and 9 are reported alongside.
    double errs[3] = {0, 0, 0};
    const int ks[3] = {1, 5, 9};
    for (int ki = 0; ki < 3; ++ki) {
      KnnModel knn;
      knn.k = ks[ki];
      knn.points = run.calib;
      std::vector<std::vector<int>> preds;
      std::vector<int> truths;
      for (const auto& s : run.test) {
        preds.push_back(knn_classify(knn, s.x, 1));
        truths.push_back(s.label);
      }
      errs[ki] = topn_error(preds, truths, 1);
    }
    const double penalty = run.final_top1 - errs[1];
    worst_penalty = std::max(worst_penalty, penalty);
    detail << "  learner " << run.final_top1 << " vs knn k=5 " << errs[1]
           << " (k=1 " << errs[0] << ", k=9 " << errs[2] << ") -> penalty "
           << penalty << '\n';
  }
  detail << "  worst penalty " << worst_penalty << " (limit 0.05)\n";
  return worst_penalty <= 0.05;
}

bool criterion_4_kmeans_failure(std::ostringstream& detail) {
  const MixtureSpec spec = skewed_four_class(24, 1.0);
  const DomainBox domain = benchmark_domain(24, 1.0);
  int kmeans_failures = 0;
  int learner_passes = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto train_samples = gen_mixture(spec, 8000, seed * 101 + 1);
    std::vector<Vec> xs;
    for (const auto& s : train_samples) xs.push_back(s.x);
    const auto model = kmeans_fit(xs, 4, 200, seed);
    const auto eval_samples = gen_mixture(spec, 2000, seed * 101 + 2);
    const auto conf = kmeans_confusion(model, eval_samples);
    const bool pathological =
        !conf.split_classes.empty() || !conf.shared_clusters.empty();
    kmeans_failures += pathological ? 1 : 0;

    SeedRun run = run_benchmark_seed(spec, domain, 9, 100, seed + 40, 8000);
    const bool learner_ok = run.final_top1 <= 0.08;
    learner_passes += learner_ok ? 1 : 0;
    detail << "  seed " << seed << ": kmeans "
           << (pathological ? "pathological" : "clean") << " (split "
           << conf.split_classes.size() << ", shared "
           << conf.shared_clusters.size() << "), learner top-1 "
           << run.final_top1 << '\n';
  }
  detail << "  kmeans failures " << kmeans_failures
         << "/5 (need >= 3), learner passes " << learner_passes
         << "/5 (need >= 4)\n";
  return kmeans_failures >= 3 && learner_passes >= 4;
}

bool criterion_5_geometry_invariants(std::ostringstream& detail,
                                     const std::vector<SeedRun>& runs) {
  Rng rng(987654321);
  double max_proj = 0.0, max_norm_drift = 0.0, max_inverse = 0.0,
         max_fixpoint = 0.0;
  for (int d : {2, 5, 50}) {
    for (int trial = 0; trial < 10000; ++trial) {
      Vec w = rng.normal_vector(d);
      if (normalize(w) == 0.0) continue;
      Vec x = rng.normal_vector(d);
      for (double& c : x) c *= 5.0;
      const double theta = 3.0 * rng.normal();
      const Vec e = project_onto_plane(x, w, theta);
      max_proj = std::max(max_proj, std::abs(dot(w, e) - theta));

      Vec v = rng.normal_vector(d);
      axpy(-dot(v, w), w, v);
      if (normalize(v) == 0.0) continue;
      const double alpha = rng.uniform(-0.5, 0.5);
      Vec p = rng.normal_vector(d);
      const Vec q = rotate_in_plane(p, w, v, alpha);
      max_norm_drift = std::max(max_norm_drift, std::abs(norm(q) - norm(p)));
      const Vec back = rotate_in_plane(q, w, v, -alpha);
      for (int i = 0; i < d; ++i) {
        max_inverse = std::max(max_inverse, std::abs(back[i] - p[i]));
      }

      if (d > 2) {
        Vec f = rng.normal_vector(d);
        axpy(-dot(f, w), w, f);
        axpy(-dot(f, v), v, f);
        const Vec g = rotate_in_plane(f, w, v, alpha);
        for (int i = 0; i < d; ++i) {
          max_fixpoint = std::max(max_fixpoint, std::abs(g[i] - f[i]));
        }
      }
    }
  }
  double max_residual = 0.0;
  for (const auto& run : runs) {
    max_residual = std::max(max_residual, run.max_rotation_residual);
  }
  detail << "  projection residual " << max_proj << " (< 1e-9)\n"
         << "  rotation norm drift " << max_norm_drift << " (< 1e-9)\n"
         << "  inverse recovery " << max_inverse << " (< 1e-8)\n"
         << "  orthogonal fixpoint " << max_fixpoint << " (< 1e-12)\n"
         << "  anchor consistency over training " << max_residual
         << " (< 1e-9)\n";
  return max_proj < 1e-9 && max_norm_drift < 1e-9 && max_inverse < 1e-8 &&
         max_fixpoint < 1e-12 && max_residual < 1e-9;
}

bool criterion_6_1d_equilibrium(std::ostringstream& detail) {
  LearnerConfig cfg = benchmark_learner_config(1.0, 100);
  const double mode = kTwoPairDelta / 2.0;
  MixtureSpec spec;
  spec.components = {{0.5, {-mode}, 1.0, 0}, {0.5, {+mode}, 1.0, 1}};

  auto expected_shift = [&](double theta, std::uint64_t seed) {
    const auto samples = gen_mixture(spec, 100000, seed);
    double total = 0.0;
    for (const auto& s : samples) {
      const double d = s.x[0] - theta;
      if (d > 0.0 && d <= cfg.phi) total -= cfg.epsilon;
      else if (d >= -cfg.phi && d <= 0.0) total += cfg.epsilon;
    }
    return total / static_cast<double>(samples.size());
  };
  const double band = 3.0 * cfg.epsilon / std::sqrt(100000.0);
  const double at_mid = expected_shift(0.0, 51);
  const double below = expected_shift(-0.5, 52);
  const double above = expected_shift(+0.5, 53);

  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Pool pool;
    pool.dim = 1;
    pool.config = cfg;
    Hyperplane h;
    h.w = {1.0};
    h.theta = -1.0;
    pool.planes.push_back(h);
    for (const auto& s : gen_mixture(spec, 10000, 600 + seed)) step(pool, s.x);
    if (std::abs(pool.planes[0].theta) < 0.5) ++hits;
  }
  detail << "  E[shift] at midpoint " << at_mid << " (|.| < " << band << ")\n"
         << "  E[shift] at -0.5σ " << below << " (> 0), at +0.5σ " << above
         << " (< 0)\n"
         << "  convergence hits " << hits << "/5\n";
  return std::abs(at_mid) < band && below > band && above < -band && hits >= 4;
}

bool criterion_7_scaling(std::ostringstream& detail,
                         const std::vector<SeedRun>& runs) {
  ExperimentConfig config;
  config.grid = 4;
  config.train_size = 2000;
  config.seed = 3;
  const auto report = cmd_sweep(config, {10, 50, 200});
  for (const auto& row : report.rows) {
    detail << "  d=" << row.dim << ": updates/sample "
           << row.mean_updates_per_sample << ", ms/sample "
           << row.wall_ms_per_sample << ", rotate fraction "
           << row.rotate_fraction << '\n';
  }
  detail << "  work exponent " << report.work_exponent
         << " (<= 1.8), wall exponent " << report.wall_exponent << '\n';

  double max_fraction = 0.0;
  for (const auto& run : runs) {
    max_fraction = std::max(max_fraction, run.max_rotate_fraction);
  }
  detail << "  max rotate fraction during 50-d training " << max_fraction
         << " (< 0.10)\n";
  return report.work_exponent <= 1.8 && max_fraction < 0.10;
}

bool criterion_8_determinism(std::ostringstream& detail) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "valleys_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);

  ExperimentConfig config;
  config.mixture = "paper2d";
  config.train_size = 2000;
  config.calib_size = 200;
  config.test_size = 200;
  config.checkpoint_every = 0;
  config.seed = 9;
  config.out_dir = (dir / "a").string();
  cmd_gen(config);
  const auto [snap_a, trace_a] = cmd_train(config);
  const std::string train_a = read_text_file((fs::path(config.out_dir) / "train.csv").string());
  const std::string snap_text_a = read_text_file(snap_a);

  config.out_dir = (dir / "b").string();
  cmd_gen(config);
  const auto [snap_b, trace_b] = cmd_train(config);
  const std::string train_b = read_text_file((fs::path(config.out_dir) / "train.csv").string());
  const std::string snap_text_b = read_text_file(snap_b);

  const bool files_identical = train_a == train_b && snap_text_a == snap_text_b;

  // Snapshot save → load → eval equals the in-memory eval exactly.
  const Pool loaded = load_pool(snap_a);
  const auto calib = read_samples_csv((dir / "a" / "calib.csv").string());
  const auto test = read_samples_csv((dir / "a" / "test.csv").string());
  Pool rebuilt = pool_from_json(pool_to_json(loaded));
  const auto direct = eval_snapshot(loaded, calib, test, {1, 3, 5});
  const auto reloaded = eval_snapshot(rebuilt, calib, test, {1, 3, 5});
  const bool eval_identical = direct.topn_errors == reloaded.topn_errors &&
                              direct.confusion_tsv == reloaded.confusion_tsv;

  detail << "  regenerated files identical: " << files_identical << '\n'
         << "  reload eval identical: " << eval_identical << '\n';
  fs::remove_all(dir);
  return files_identical && eval_identical;
}

}  // namespace

int main() {
  std::cout << std::setprecision(4);
  int failures = 0;
  std::vector<SeedRun> runs_50d;

  struct Entry {
    const char* name;
    bool passed;
    std::string detail;
  };
  std::vector<Entry> entries;

  auto record = [&](const char* name, auto&& fn) {
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail << "  exception: " << e.what() << '\n';
    }
    entries.push_back({name, ok, detail.str()});
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n'
              << detail.str();
    std::cout.flush();
  };

  record("criterion 1: 50-d convergence to near-optimal error",
         [&](std::ostringstream& d) {
           return criterion_1_50d_convergence(d, runs_50d);
         });
  record("criterion 2: 2-D valley migration and head accuracy",
         [&](std::ostringstream& d) { return criterion_2_2d_migration(d); });
  record("criterion 3: unsupervised penalty vs kNN",
         [&](std::ostringstream& d) {
           return criterion_3_unsupervised_penalty(d, runs_50d);
         });
  record("criterion 4: k-means failure mode",
         [&](std::ostringstream& d) { return criterion_4_kmeans_failure(d); });
  record("criterion 5: geometry invariant suite",
         [&](std::ostringstream& d) {
           return criterion_5_geometry_invariants(d, runs_50d);
         });
  record("criterion 6: 1-D equilibrium dynamics",
         [&](std::ostringstream& d) { return criterion_6_1d_equilibrium(d); });
  record("criterion 7: dimensional scaling and update sparsity",
         [&](std::ostringstream& d) { return criterion_7_scaling(d, runs_50d); });
  record("criterion 8: determinism and snapshot round trip",
         [&](std::ostringstream& d) { return criterion_8_determinism(d); });

  std::cout << (failures == 0 ? "all criteria passed\n"
                              : std::to_string(failures) + " criteria failed\n");
  return failures;
}
