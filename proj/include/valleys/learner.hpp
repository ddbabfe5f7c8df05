#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "valleys/vec.hpp"

namespace valleys {

/// Shared learning parameters. ε, Φ and β are expressed in feature units
/// and scale linearly with the data spread σ.
struct LearnerConfig {
  double epsilon = 0.0033;   ///< shift step
  double phi = 2.0;          ///< activity band half-width
  double alpha = 0.04;       ///< rotation angle (radians)
  double beta = 8.0;         ///< mean-estimate band half-width
  std::uint32_t warmup_shifts = 100;  ///< shift count before rotations enable
  std::uint64_t rng_seed = 0;

  /// Optional linear decay of ε and α: factor max(0.1, 1 − t/horizon)
  /// applied per processed sample t. Off by default.
  bool decay = false;
  std::uint64_t decay_horizon = 0;

  void validate() const;
};

/// Axis-aligned hypercubic region used to place the initial pool.
struct DomainBox {
  Vec lo;
  Vec hi;

  std::size_t dim() const { return lo.size(); }
  double edge(std::size_t i) const { return hi[i] - lo[i]; }
  void validate() const;
};

/// One discriminator's full learning state.
struct Hyperplane {
  Vec w;                 ///< unit normal
  double theta = 0.0;    ///< threshold (distance variable)
  std::uint64_t timer = 0;        ///< activity-band self-timer
  std::uint64_t shift_count = 0;  ///< shift-branch activations
  bool has_means = false;         ///< both side estimates present
  Vec mu1;               ///< near-class mean, side w·x ≤ θ
  Vec mu2;               ///< near-class mean, side w·x > θ
  double c1 = 0.0;       ///< cumulative weight, side 1
  double c2 = 0.0;       ///< cumulative weight, side 2
  int id = 0;
};

/// Aggregate update counters for one pool, kept for sparsity/consistency
/// checks and run traces.
struct PoolDiagnostics {
  std::uint64_t samples_processed = 0;
  std::uint64_t shifts_fired = 0;
  std::uint64_t rotations_fired = 0;
  std::uint64_t rotation_attempts = 0;
  std::uint64_t degenerate_skips = 0;
  std::uint64_t band_hits = 0;       ///< plane-sample pairs inside Φ
  std::uint64_t mean_updates = 0;    ///< plane-sample pairs inside β
};

/// Fired-rotation record passed to an optional observer (test hook).
struct RotationEvent {
  int plane_id;
  Vec c;
  Vec w_new;
  double theta_new;
};

/// The hyperplane pool plus shared parameters.
struct Pool {
  int dim = 0;
  LearnerConfig config;
  std::vector<Hyperplane> planes;
  PoolDiagnostics diag;

  /// Invoked after every fired rotation when set. Not serialized.
  std::function<void(const RotationEvent&)> rotation_observer;

  std::size_t size() const { return planes.size(); }
};

/// Checkpoint row recorded while training.
struct TraceCheckpoint {
  std::uint64_t sample_index = 0;
  std::vector<std::pair<int, double>> topn_errors;  ///< (n, error)
  double wall_ms = 0.0;
  std::uint64_t rotations_fired = 0;
  std::uint64_t shifts_fired = 0;
};

struct RunTrace {
  std::vector<TraceCheckpoint> checkpoints;
};

/// d·planes_per_dim axis-aligned planes, evenly interior-spaced per
/// dimension: offsets lo_i + o·(k+0.5)/planes_per_dim.
Pool init_grid(const DomainBox& domain, int planes_per_dim,
               const LearnerConfig& config);

/// `count` planes with normals uniform on the unit sphere, each passing
/// through a point drawn uniformly in the domain.
Pool init_random(const DomainBox& domain, int count, std::uint64_t seed,
                 const LearnerConfig& config);

/// Output code y_j = max{0, w_j·x − θ_j}; no learning side effects.
std::vector<double> output_code(const Pool& pool, const Vec& x);

/// Threshold shift: ±ε inside the Φ band (boundary w·x = θ takes +ε),
/// unchanged outside. Increments shift_count when a branch fires.
void shift_update(Hyperplane& h, double signed_dist, const LearnerConfig& cfg,
                  double epsilon_scale, PoolDiagnostics* diag);

/// Side-mean estimate update inside the β band: uniform unit weight,
/// reflected-point initialization on first contact.
void mean_update(Hyperplane& h, const Vec& x, double signed_dist,
                 const LearnerConfig& cfg, PoolDiagnostics* diag);

/// Rotation by ±α in the (u, v) plane about C; the sense that moves the
/// plane farther from x wins, then θ is rebuilt as w'·C. Degenerate frames
/// leave the plane unchanged.
void rotate_update(Hyperplane& h, const Vec& x, const LearnerConfig& cfg,
                   double alpha_scale, PoolDiagnostics* diag,
                   const std::function<void(const RotationEvent&)>& observer);

/// One streaming step: for every plane independently, mean update, then —
/// when inside the Φ band — shift, rotation (post warm-up, estimates
/// present) and the self-timer.
void step(Pool& pool, const Vec& x);

/// Probe callback: sees the quiescent pool and the number of samples
/// processed so far, returns Top-n errors to record.
using ProbeFn = std::function<std::vector<std::pair<int, double>>(
    const Pool&, std::uint64_t)>;

struct TrainOptions {
  std::uint64_t checkpoint_every = 500;  ///< 0 disables probing
  ProbeFn probe;
};

/// Single pass over the stream in order; probes at the configured cadence
/// (and once more at the end of the stream).
RunTrace train(Pool& pool, const std::vector<Vec>& stream,
               const TrainOptions& options = {});

}  // namespace valleys
