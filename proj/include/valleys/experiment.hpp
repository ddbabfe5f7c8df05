#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valleys/learner.hpp"
#include "valleys/synthdata.hpp"

namespace valleys {

/// Full experiment description; every field maps to a config-file key and
/// a command-line flag.
struct ExperimentConfig {
  // Mixture: builtin name ("paper2d", "paper50d", "kmeansfail") or a JSON
  // spec path.
  std::string mixture = "paper2d";
  double sigma = 1.0;

  // Learner parameters, in units of sigma.
  double epsilon = 0.0033;
  double phi = 2.0;
  double alpha = 0.04;
  double beta = 8.0;
  std::uint32_t warmup = 100;
  bool decay = false;
  std::uint64_t decay_horizon = 0;

  // Pool initialization: grid planes per dimension, or a random count.
  int grid = 4;
  int random_count = 0;  ///< > 0 selects random init

  // Domain: explicit box, the benchmark default, or estimated from data.
  std::optional<double> domain_lo;
  std::optional<double> domain_hi;
  bool auto_domain = false;

  std::size_t train_size = 10000;
  std::size_t calib_size = 400;
  std::size_t test_size = 400;
  std::uint64_t seed = 1;
  std::uint64_t checkpoint_every = 500;
  std::string out_dir = ".";

  LearnerConfig learner_config() const;
};

MixtureSpec resolve_mixture(const ExperimentConfig& config);

/// Domain for pool placement: explicit > benchmark default; with
/// auto_domain, per-coordinate min/max of `data` (and the parameter scale
/// from the mean per-coordinate standard deviation).
struct ResolvedDomain {
  DomainBox box;
  double sigma_scale = 1.0;
};
ResolvedDomain resolve_domain(const ExperimentConfig& config,
                              const std::vector<LabeledSample>& data);

Pool make_pool(const ExperimentConfig& config, const DomainBox& domain);

/// Writes train/calib/test CSVs with disjoint seed streams into out_dir.
/// Returns the three paths.
std::vector<std::string> cmd_gen(const ExperimentConfig& config);

/// Trains a single epoch; writes snapshot JSON and trace CSV. Returns
/// (snapshot path, trace path).
std::pair<std::string, std::string> cmd_train(const ExperimentConfig& config);

struct EvalReport {
  std::vector<std::pair<int, double>> topn_errors;
  std::string confusion_tsv;
  std::string headset_json;
};

EvalReport eval_snapshot(const Pool& pool,
                         const std::vector<LabeledSample>& calib,
                         const std::vector<LabeledSample>& test,
                         const std::vector<int>& ns);

EvalReport cmd_eval(const std::string& snapshot_path,
                    const std::string& calib_csv, const std::string& test_csv,
                    const std::vector<int>& ns, bool warn_leakage = true);

struct BaselineReport {
  std::vector<std::pair<int, double>> topn_errors;  ///< knn only
  std::string confusion_tsv;                        ///< kmeans only
  std::vector<int> split_classes;
  std::vector<int> shared_clusters;
};

BaselineReport cmd_baseline(const std::string& kind,
                            const std::string& train_csv,
                            const std::string& test_csv, int k,
                            std::uint64_t seed);

void cmd_plot(const std::string& snapshot_path, const std::string& sample_csv,
              const std::string& out_svg,
              const std::string& before_snapshot = "");

struct SweepRow {
  std::size_t dim = 0;
  std::size_t pool_size = 0;
  double mean_updates_per_sample = 0.0;  ///< planes doing the full Φ path
  double wall_ms_per_sample = 0.0;
  double rotate_fraction = 0.0;          ///< fired rotations / (samples·N)
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double work_exponent = 0.0;   ///< log-log slope of mean updates vs d
  double wall_exponent = 0.0;   ///< log-log slope of wall time vs d
  std::string csv;
};

/// Scaling sweep: for each d builds the analogous two-pair benchmark and a
/// grid pool, trains, measures per-sample full-update work and wall time,
/// and fits log-log exponents across the dims.
SweepReport cmd_sweep(const ExperimentConfig& config,
                      const std::vector<std::size_t>& dims);

std::string confusion_to_tsv(const std::vector<std::vector<long>>& counts);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& text);

}  // namespace valleys
