// Experiment driver: data generation, training, evaluation, baselines,
// parameter sweeps and 2-D geometry plots.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "valleys/experiment.hpp"
#include "valleys/io.hpp"

namespace {

void add_experiment_flags(CLI::App* cmd, valleys::ExperimentConfig& config,
                          std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override)");
  cmd->add_option("--mixture", config.mixture,
                  "builtin name (paper2d, paper50d, kmeansfail) or spec JSON");
  cmd->add_option("--sigma", config.sigma, "component std-dev scale");
  cmd->add_option("--epsilon", config.epsilon, "shift step (units of sigma)");
  cmd->add_option("--phi", config.phi, "activity band half-width");
  cmd->add_option("--alpha", config.alpha, "rotation angle (radians)");
  cmd->add_option("--beta", config.beta, "mean-estimate band half-width");
  cmd->add_option("--warmup", config.warmup, "shifts before rotation enables");
  cmd->add_flag("--decay", config.decay, "linear epsilon/alpha decay");
  cmd->add_option("--decay-horizon", config.decay_horizon,
                  "samples to reach the decay floor");
  cmd->add_option("--grid", config.grid, "grid planes per dimension");
  cmd->add_option("--random-count", config.random_count,
                  "random pool size (overrides --grid when > 0)");
  cmd->add_option("--domain-lo", config.domain_lo, "explicit domain corner");
  cmd->add_option("--domain-hi", config.domain_hi, "explicit domain corner");
  cmd->add_flag("--auto-domain", config.auto_domain,
                "estimate the domain box and sigma from the data");
  cmd->add_option("--train-size", config.train_size, "training samples");
  cmd->add_option("--calib-size", config.calib_size, "calibration samples");
  cmd->add_option("--test-size", config.test_size, "test samples");
  cmd->add_option("--seed", config.seed, "root RNG seed");
  cmd->add_option("--checkpoint-every", config.checkpoint_every,
                  "trace cadence in samples (0 disables)");
  cmd->add_option("--out", config.out_dir, "output directory");
}

void apply_config_file(const std::string& config_path,
                       valleys::ExperimentConfig& config, CLI::App* cmd) {
  if (config_path.empty()) return;
  // File first, then re-apply any explicit flags on top.
  valleys::ExperimentConfig from_file = valleys::experiment_config_from_json(
      valleys::read_text_file(config_path));
  valleys::ExperimentConfig flags = config;
  config = from_file;
  for (const auto* opt : cmd->get_options()) {
    if (opt->count() == 0) continue;
    const std::string name = opt->get_name();
    if (name == "--mixture") config.mixture = flags.mixture;
    else if (name == "--sigma") config.sigma = flags.sigma;
    else if (name == "--epsilon") config.epsilon = flags.epsilon;
    else if (name == "--phi") config.phi = flags.phi;
    else if (name == "--alpha") config.alpha = flags.alpha;
    else if (name == "--beta") config.beta = flags.beta;
    else if (name == "--warmup") config.warmup = flags.warmup;
    else if (name == "--decay") config.decay = flags.decay;
    else if (name == "--decay-horizon") config.decay_horizon = flags.decay_horizon;
    else if (name == "--grid") config.grid = flags.grid;
    else if (name == "--random-count") config.random_count = flags.random_count;
    else if (name == "--domain-lo") config.domain_lo = flags.domain_lo;
    else if (name == "--domain-hi") config.domain_hi = flags.domain_hi;
    else if (name == "--auto-domain") config.auto_domain = flags.auto_domain;
    else if (name == "--train-size") config.train_size = flags.train_size;
    else if (name == "--calib-size") config.calib_size = flags.calib_size;
    else if (name == "--test-size") config.test_size = flags.test_size;
    else if (name == "--seed") config.seed = flags.seed;
    else if (name == "--checkpoint-every") config.checkpoint_every = flags.checkpoint_every;
    else if (name == "--out") config.out_dir = flags.out_dir;
  }
}

void print_topn(const std::vector<std::pair<int, double>>& errors) {
  for (const auto& [n, err] : errors) {
    std::cout << "top" << n << "_error " << err << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"valley-seeking hyperplane classifier experiments"};
  app.require_subcommand(1);

  valleys::ExperimentConfig config;
  std::string config_path;

  auto* gen = app.add_subcommand("gen", "generate train/calib/test CSVs");
  add_experiment_flags(gen, config, config_path);

  auto* train = app.add_subcommand("train", "train one epoch, write snapshot");
  add_experiment_flags(train, config, config_path);

  auto* eval = app.add_subcommand("eval", "evaluate a snapshot");
  std::string snapshot, calib_csv, test_csv;
  std::vector<int> ns{1, 3, 5};
  eval->add_option("--snapshot", snapshot, "pool snapshot JSON")->required();
  eval->add_option("--calib", calib_csv, "calibration CSV")->required();
  eval->add_option("--test", test_csv, "test CSV")->required();
  eval->add_option("--n", ns, "Top-n values");
  std::string headset_out;
  eval->add_option("--headset-out", headset_out, "write the head set JSON");

  auto* baseline = app.add_subcommand("baseline", "kNN / k-means reference");
  std::string kind, b_train, b_test;
  int k = 5;
  std::uint64_t b_seed = 1;
  baseline->add_option("kind", kind, "knn or kmeans")->required();
  baseline->add_option("--train", b_train, "training CSV")->required();
  baseline->add_option("--test", b_test, "test CSV")->required();
  baseline->add_option("--k", k, "neighbors (knn) or clusters (kmeans)");
  baseline->add_option("--seed", b_seed, "seeding RNG (kmeans)");

  auto* plot = app.add_subcommand("plot", "2-D SVG of samples and planes");
  std::string p_snapshot, p_samples, p_out, p_before;
  plot->add_option("--snapshot", p_snapshot, "pool snapshot JSON")->required();
  plot->add_option("--samples", p_samples, "sample CSV (optional scatter)");
  plot->add_option("--out", p_out, "output SVG path")->required();
  plot->add_option("--before", p_before, "overlay this snapshot dashed");

  auto* sweep = app.add_subcommand("sweep", "dimension scaling report");
  std::vector<std::size_t> dims{10, 50, 200};
  std::string sweep_out;
  add_experiment_flags(sweep, config, config_path);
  sweep->add_option("--dims", dims, "dimensions to measure");
  sweep->add_option("--report", sweep_out, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      apply_config_file(config_path, config, gen);
      for (const auto& path : valleys::cmd_gen(config)) {
        std::cout << path << '\n';
      }
    } else if (train->parsed()) {
      apply_config_file(config_path, config, train);
      const auto [snap, trace] = valleys::cmd_train(config);
      std::cout << snap << '\n' << trace << '\n';
    } else if (eval->parsed()) {
      const auto report = valleys::cmd_eval(snapshot, calib_csv, test_csv, ns);
      print_topn(report.topn_errors);
      std::cout << "confusion (rows true, cols predicted):\n"
                << report.confusion_tsv;
      if (!headset_out.empty()) {
        valleys::write_text_file(headset_out, report.headset_json);
      }
    } else if (baseline->parsed()) {
      const auto report = valleys::cmd_baseline(kind, b_train, b_test, k, b_seed);
      if (kind == "knn") {
        print_topn(report.topn_errors);
      } else {
        std::cout << report.confusion_tsv;
        std::cout << "split_classes:";
        for (int c : report.split_classes) std::cout << ' ' << c;
        std::cout << "\nshared_clusters:";
        for (int c : report.shared_clusters) std::cout << ' ' << c;
        std::cout << '\n';
      }
    } else if (plot->parsed()) {
      valleys::cmd_plot(p_snapshot, p_samples, p_out, p_before);
      std::cout << p_out << '\n';
    } else if (sweep->parsed()) {
      apply_config_file(config_path, config, sweep);
      const auto report = valleys::cmd_sweep(config, dims);
      std::cout << report.csv;
      if (!sweep_out.empty()) {
        valleys::write_text_file(sweep_out, report.csv);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
