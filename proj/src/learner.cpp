#include "valleys/learner.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "valleys/geometry.hpp"
#include "valleys/rng.hpp"

namespace valleys {

void LearnerConfig::validate() const {
  if (epsilon <= 0 || phi <= 0 || alpha <= 0 || beta <= 0) {
    throw std::invalid_argument("LearnerConfig: parameters must be positive");
  }
  if (epsilon >= phi) {
    throw std::invalid_argument("LearnerConfig: requires epsilon < phi");
  }
  if (alpha >= 0.5) {
    throw std::invalid_argument("LearnerConfig: requires alpha < 0.5");
  }
  if (beta < phi) {
    throw std::invalid_argument("LearnerConfig: requires beta >= phi");
  }
}

void DomainBox::validate() const {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("DomainBox: bad corners");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(hi[i] > lo[i])) {
      throw std::invalid_argument("DomainBox: hi must exceed lo");
    }
  }
}

Pool init_grid(const DomainBox& domain, int planes_per_dim,
               const LearnerConfig& config) {
  domain.validate();
  config.validate();
  if (planes_per_dim < 1) {
    throw std::invalid_argument("init_grid: planes_per_dim >= 1 required");
  }
  const std::size_t d = domain.dim();
  Pool pool;
  pool.dim = static_cast<int>(d);
  pool.config = config;
  pool.planes.reserve(d * static_cast<std::size_t>(planes_per_dim));
  int id = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (int k = 0; k < planes_per_dim; ++k) {
      Hyperplane h;
      h.w = basis_vector(d, i);
      h.theta = domain.lo[i] +
                domain.edge(i) * (k + 0.5) / static_cast<double>(planes_per_dim);
      h.id = id++;
      pool.planes.push_back(std::move(h));
    }
  }
  return pool;
}

Pool init_random(const DomainBox& domain, int count, std::uint64_t seed,
                 const LearnerConfig& config) {
  domain.validate();
  config.validate();
  if (count < 1) throw std::invalid_argument("init_random: count >= 1 required");
  const std::size_t d = domain.dim();
  Pool pool;
  pool.dim = static_cast<int>(d);
  pool.config = config;
  pool.planes.reserve(count);
  Rng root(seed);
  for (int id = 0; id < count; ++id) {
    Rng rng = root.substream(static_cast<std::uint64_t>(id));
    Hyperplane h;
    do {
      h.w = rng.normal_vector(d);
    } while (normalize(h.w) == 0.0);
    Vec point(d);
    for (std::size_t i = 0; i < d; ++i) {
      point[i] = rng.uniform(domain.lo[i], domain.hi[i]);
    }
    h.theta = dot(h.w, point);
    h.id = id;
    pool.planes.push_back(std::move(h));
  }
  return pool;
}

std::vector<double> output_code(const Pool& pool, const Vec& x) {
  if (static_cast<int>(x.size()) != pool.dim) {
    throw std::invalid_argument("output_code: dimension mismatch");
  }
  std::vector<double> y(pool.planes.size());
  for (std::size_t j = 0; j < pool.planes.size(); ++j) {
    y[j] = std::max(0.0, signed_distance(x, pool.planes[j].w, pool.planes[j].theta));
  }
  return y;
}

void shift_update(Hyperplane& h, double signed_dist, const LearnerConfig& cfg,
                  double epsilon_scale, PoolDiagnostics* diag) {
  const double eps = cfg.epsilon * epsilon_scale;
  if (signed_dist > 0.0 && signed_dist <= cfg.phi) {
    h.theta -= eps;
  } else if (signed_dist >= -cfg.phi && signed_dist <= 0.0) {
    h.theta += eps;
  } else {
    return;
  }
  ++h.shift_count;
  if (diag) ++diag->shifts_fired;
}

void mean_update(Hyperplane& h, const Vec& x, double signed_dist,
                 const LearnerConfig& cfg, PoolDiagnostics* diag) {
  const double r = std::abs(signed_dist);
  if (r > cfg.beta) return;  // uniform weight g is zero outside the band
  if (diag) ++diag->mean_updates;
  if (!h.has_means) {
    // First contact: the near side takes the sample, the far side its
    // reflection across the plane; both start with unit weight.
    if (signed_dist <= 0.0) {
      h.mu1 = x;
      h.mu2 = x;
      axpy(2.0 * r, h.w, h.mu2);
    } else {
      h.mu2 = x;
      h.mu1 = x;
      axpy(-2.0 * r, h.w, h.mu1);
    }
    h.c1 = 1.0;
    h.c2 = 1.0;
    h.has_means = true;
    return;
  }
  if (signed_dist <= 0.0) {
    h.c1 += 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      h.mu1[i] += (x[i] - h.mu1[i]) / h.c1;
    }
  } else {
    h.c2 += 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      h.mu2[i] += (x[i] - h.mu2[i]) / h.c2;
    }
  }
}

void rotate_update(Hyperplane& h, const Vec& x, const LearnerConfig& cfg,
                   double alpha_scale, PoolDiagnostics* diag,
                   const std::function<void(const RotationEvent&)>& observer) {
  if (diag) ++diag->rotation_attempts;
  auto frame = build_rotation_frame(x, h.w, h.theta, h.mu1, h.mu2);
  if (!frame) {
    if (diag) ++diag->degenerate_skips;
    return;
  }
  const double alpha = cfg.alpha * alpha_scale;

  // Try both senses; keep the one that moves the plane away from x.
  Vec w_pos = rotate_in_plane(h.w, frame->u, frame->v, alpha);
  Vec w_neg = rotate_in_plane(h.w, frame->u, frame->v, -alpha);
  normalize(w_pos);
  normalize(w_neg);
  const double theta_pos = dot(w_pos, frame->c);
  const double theta_neg = dot(w_neg, frame->c);
  const double dist_pos = std::abs(dot(w_pos, x) - theta_pos);
  const double dist_neg = std::abs(dot(w_neg, x) - theta_neg);
  if (dist_pos >= dist_neg) {
    h.w = std::move(w_pos);
    h.theta = theta_pos;
  } else {
    h.w = std::move(w_neg);
    h.theta = theta_neg;
  }
  if (diag) ++diag->rotations_fired;
  if (observer) {
    observer(RotationEvent{h.id, frame->c, h.w, h.theta});
  }
}

void step(Pool& pool, const Vec& x) {
  if (static_cast<int>(x.size()) != pool.dim) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  const LearnerConfig& cfg = pool.config;
  double decay_scale = 1.0;
  if (cfg.decay && cfg.decay_horizon > 0) {
    const double t = static_cast<double>(pool.diag.samples_processed);
    decay_scale = std::max(0.1, 1.0 - t / static_cast<double>(cfg.decay_horizon));
  }
  for (Hyperplane& h : pool.planes) {
    const double s = signed_distance(x, h.w, h.theta);
    if (std::abs(s) > cfg.beta) continue;  // outside every band
    mean_update(h, x, s, cfg, &pool.diag);
    if (std::abs(s) > cfg.phi) continue;
    ++pool.diag.band_hits;
    shift_update(h, s, cfg, decay_scale, &pool.diag);
    if (h.has_means && h.shift_count >= cfg.warmup_shifts) {
      rotate_update(h, x, cfg, decay_scale, &pool.diag, pool.rotation_observer);
    }
    ++h.timer;
  }
  ++pool.diag.samples_processed;
}

RunTrace train(Pool& pool, const std::vector<Vec>& stream,
               const TrainOptions& options) {
  RunTrace trace;
  const auto t0 = std::chrono::steady_clock::now();
  auto record = [&](std::uint64_t index) {
    if (!options.probe) return;
    TraceCheckpoint cp;
    cp.sample_index = index;
    cp.topn_errors = options.probe(pool, index);
    cp.wall_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    cp.rotations_fired = pool.diag.rotations_fired;
    cp.shifts_fired = pool.diag.shifts_fired;
    trace.checkpoints.push_back(std::move(cp));
  };

  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (static_cast<int>(stream[i].size()) != pool.dim) {
      throw std::invalid_argument("train: dimension mismatch at sample " +
                                  std::to_string(i));
    }
    step(pool, stream[i]);
    if (options.checkpoint_every > 0 &&
        (i + 1) % options.checkpoint_every == 0) {
      record(i + 1);
    }
  }
  if (options.checkpoint_every > 0 && !stream.empty() &&
      stream.size() % options.checkpoint_every != 0) {
    record(stream.size());
  }
  return trace;
}

}  // namespace valleys
