#include "valleys/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "valleys/baselines.hpp"
#include "valleys/evalkit.hpp"
#include "valleys/headmap.hpp"
#include "valleys/io.hpp"
#include "valleys/svgplot.hpp"

namespace valleys {
namespace {

using nlohmann::json;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::vector<Vec> features_of(const std::vector<LabeledSample>& samples) {
  std::vector<Vec> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) xs.push_back(s.x);
  return xs;
}

}  // namespace

LearnerConfig ExperimentConfig::learner_config() const {
  LearnerConfig cfg;
  cfg.epsilon = epsilon * sigma;
  cfg.phi = phi * sigma;
  cfg.alpha = alpha;  // an angle; does not scale with the data
  cfg.beta = beta * sigma;
  cfg.warmup_shifts = warmup;
  cfg.rng_seed = seed;
  cfg.decay = decay;
  cfg.decay_horizon = decay_horizon;
  return cfg;
}

MixtureSpec resolve_mixture(const ExperimentConfig& config) {
  if (config.mixture == "paper2d") return two_pair_2d(config.sigma);
  if (config.mixture == "paper50d") return two_pair_50d(config.sigma);
  if (config.mixture == "kmeansfail") {
    return skewed_four_class(16, config.sigma);
  }
  return load_mixture(config.mixture);
}

ResolvedDomain resolve_domain(const ExperimentConfig& config,
                              const std::vector<LabeledSample>& data) {
  ResolvedDomain out;
  out.sigma_scale = config.sigma;
  std::size_t d = 0;
  if (!data.empty()) {
    d = data.front().x.size();
  } else {
    d = resolve_mixture(config).dim();
  }
  if (config.domain_lo && config.domain_hi) {
    out.box.lo.assign(d, *config.domain_lo);
    out.box.hi.assign(d, *config.domain_hi);
    return out;
  }
  if (config.auto_domain) {
    if (data.empty()) {
      throw std::invalid_argument("auto-domain requires data");
    }
    Vec lo(d, 1e300), hi(d, -1e300), mean(d, 0.0), m2(d, 0.0);
    for (const auto& s : data) {
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], s.x[i]);
        hi[i] = std::max(hi[i], s.x[i]);
        mean[i] += s.x[i];
      }
    }
    for (std::size_t i = 0; i < d; ++i) mean[i] /= data.size();
    for (const auto& s : data) {
      for (std::size_t i = 0; i < d; ++i) {
        const double r = s.x[i] - mean[i];
        m2[i] += r * r;
      }
    }
    double sigma_mean = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      sigma_mean += std::sqrt(m2[i] / std::max<std::size_t>(1, data.size() - 1));
    }
    out.sigma_scale = sigma_mean / d;
    // A uniform hypercube over the most spread coordinate keeps grid
    // spacing equal per dimension.
    double lo_all = 1e300, hi_all = -1e300;
    for (std::size_t i = 0; i < d; ++i) {
      lo_all = std::min(lo_all, lo[i]);
      hi_all = std::max(hi_all, hi[i]);
    }
    out.box.lo.assign(d, lo_all);
    out.box.hi.assign(d, hi_all);
    return out;
  }
  out.box = benchmark_domain(d, config.sigma);
  return out;
}

Pool make_pool(const ExperimentConfig& config, const DomainBox& domain) {
  const LearnerConfig cfg = config.learner_config();
  if (config.random_count > 0) {
    return init_random(domain, config.random_count, config.seed, cfg);
  }
  return init_grid(domain, config.grid, cfg);
}

std::vector<std::string> cmd_gen(const ExperimentConfig& config) {
  const MixtureSpec spec = resolve_mixture(config);
  std::filesystem::create_directories(config.out_dir);
  const std::vector<std::pair<std::string, std::size_t>> parts = {
      {"train.csv", config.train_size},
      {"calib.csv", config.calib_size},
      {"test.csv", config.test_size},
  };
  std::vector<std::string> paths;
  std::uint64_t tag = 0;
  for (const auto& [name, size] : parts) {
    const auto samples = gen_mixture(spec, size, mix_seed(config.seed, tag++));
    const std::string path = join(config.out_dir, name);
    write_samples_csv(path, samples);
    paths.push_back(path);
  }
  return paths;
}

std::pair<std::string, std::string> cmd_train(const ExperimentConfig& config) {
  const std::string train_path = join(config.out_dir, "train.csv");
  const auto train_samples = read_samples_csv(train_path);
  const ResolvedDomain domain = resolve_domain(config, train_samples);

  ExperimentConfig scaled = config;
  if (config.auto_domain) scaled.sigma = domain.sigma_scale;
  Pool pool = make_pool(scaled, domain.box);
  save_pool(join(config.out_dir, "initial_snapshot.json"), pool);

  std::vector<LabeledSample> calib, test;
  const std::string calib_path = join(config.out_dir, "calib.csv");
  const std::string test_path = join(config.out_dir, "test.csv");
  if (std::filesystem::exists(calib_path) &&
      std::filesystem::exists(test_path)) {
    calib = read_samples_csv(calib_path);
    test = read_samples_csv(test_path);
  }

  TrainOptions options;
  options.checkpoint_every = config.checkpoint_every;
  if (!calib.empty() && !test.empty()) {
    options.probe = [&](const Pool& p, std::uint64_t) {
      return probe_pool(p, calib, test, {1, 3, 5});
    };
  }
  const RunTrace trace = train(pool, features_of(train_samples), options);

  const std::string snapshot_path = join(config.out_dir, "snapshot.json");
  const std::string trace_path = join(config.out_dir, "trace.csv");
  save_pool(snapshot_path, pool);
  write_trace_csv(trace_path, trace);
  write_text_file(join(config.out_dir, "trace.json"), trace_to_json(trace));
  return {snapshot_path, trace_path};
}

std::string confusion_to_tsv(const std::vector<std::vector<long>>& counts) {
  std::ostringstream out;
  for (const auto& row : counts) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << '\t';
      out << row[j];
    }
    out << '\n';
  }
  return out.str();
}

EvalReport eval_snapshot(const Pool& pool,
                         const std::vector<LabeledSample>& calib,
                         const std::vector<LabeledSample>& test,
                         const std::vector<int>& ns) {
  EvalReport report;
  const HeadSet heads = associate_labels(pool, calib);
  report.headset_json = headset_to_json(heads);
  const int n_max =
      std::min<int>(*std::max_element(ns.begin(), ns.end()),
                    static_cast<int>(heads.heads.size()));
  std::vector<std::vector<int>> predictions;
  std::vector<int> truths, top1;
  for (const auto& s : test) {
    predictions.push_back(classify_topn(heads, pool, s.x, n_max));
    truths.push_back(s.label);
    top1.push_back(predictions.back().front());
  }
  for (int n : ns) {
    report.topn_errors.emplace_back(
        n, topn_error(predictions, truths, std::min(n, n_max)));
  }
  report.confusion_tsv = confusion_to_tsv(confusion(top1, truths).counts);
  return report;
}

EvalReport cmd_eval(const std::string& snapshot_path,
                    const std::string& calib_csv, const std::string& test_csv,
                    const std::vector<int>& ns, bool warn_leakage) {
  if (warn_leakage && calib_csv == test_csv) {
    std::cerr << "warning: calibration and test files are identical; "
                 "reported errors are optimistic\n";
  }
  const Pool pool = load_pool(snapshot_path);
  const auto calib = read_samples_csv(calib_csv);
  const auto test = read_samples_csv(test_csv);
  return eval_snapshot(pool, calib, test, ns);
}

BaselineReport cmd_baseline(const std::string& kind,
                            const std::string& train_csv,
                            const std::string& test_csv, int k,
                            std::uint64_t seed) {
  const auto train_samples = read_samples_csv(train_csv);
  const auto test_samples = read_samples_csv(test_csv);
  BaselineReport report;
  if (kind == "knn") {
    KnnModel model{train_samples, k};
    model.validate();
    std::set<int> labels;
    for (const auto& s : train_samples) labels.insert(s.label);
    const int n_max = std::min<int>(5, static_cast<int>(labels.size()));
    std::vector<std::vector<int>> predictions;
    std::vector<int> truths;
    for (const auto& s : test_samples) {
      predictions.push_back(knn_classify(model, s.x, n_max));
      truths.push_back(s.label);
    }
    for (int n : {1, 3, 5}) {
      if (n <= n_max) {
        report.topn_errors.emplace_back(n, topn_error(predictions, truths, n));
      }
    }
    return report;
  }
  if (kind == "kmeans") {
    const auto model = kmeans_fit(features_of(train_samples), k, 200, seed);
    const auto conf = kmeans_confusion(model, test_samples);
    report.confusion_tsv = confusion_to_tsv(conf.counts);
    report.split_classes = conf.split_classes;
    report.shared_clusters = conf.shared_clusters;
    return report;
  }
  throw std::invalid_argument("cmd_baseline: unknown kind " + kind);
}

void cmd_plot(const std::string& snapshot_path, const std::string& sample_csv,
              const std::string& out_svg, const std::string& before_snapshot) {
  const Pool pool = load_pool(snapshot_path);
  std::vector<LabeledSample> samples;
  if (!sample_csv.empty() && std::filesystem::exists(sample_csv)) {
    samples = read_samples_csv(sample_csv);
  }
  if (pool.dim != 2) {
    throw std::invalid_argument("cmd_plot: snapshot is not 2-D");
  }
  // Domain for drawing: the benchmark box unless the samples spill past it.
  DomainBox box = benchmark_domain(2, 1.0);
  for (const auto& s : samples) {
    for (int i = 0; i < 2; ++i) {
      box.lo[i] = std::min(box.lo[i], s.x[i] - 1.0);
      box.hi[i] = std::max(box.hi[i], s.x[i] + 1.0);
    }
  }
  if (!before_snapshot.empty()) {
    const Pool before = load_pool(before_snapshot);
    write_svg_2d(out_svg, pool, samples, box, &before);
  } else {
    write_svg_2d(out_svg, pool, samples, box, nullptr);
  }
}

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need >= 2 points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepReport cmd_sweep(const ExperimentConfig& config,
                      const std::vector<std::size_t>& dims) {
  if (dims.size() < 2) {
    throw std::invalid_argument("cmd_sweep: need at least two dims");
  }
  SweepReport report;
  std::vector<double> ds, work, wall;
  for (std::size_t d : dims) {
    const MixtureSpec spec = two_pair_nd(d, config.sigma);
    const auto samples =
        gen_mixture(spec, config.train_size, mix_seed(config.seed, d));
    ExperimentConfig local = config;
    Pool pool = make_pool(local, benchmark_domain(d, config.sigma));

    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& s : samples) step(pool, s.x);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();

    SweepRow row;
    row.dim = d;
    row.pool_size = pool.size();
    row.mean_updates_per_sample =
        static_cast<double>(pool.diag.band_hits) / samples.size();
    row.wall_ms_per_sample = ms / samples.size();
    row.rotate_fraction = static_cast<double>(pool.diag.rotations_fired) /
                          (static_cast<double>(samples.size()) * pool.size());
    report.rows.push_back(row);
    ds.push_back(static_cast<double>(d));
    work.push_back(std::max(row.mean_updates_per_sample, 1e-12));
    wall.push_back(std::max(row.wall_ms_per_sample, 1e-12));
  }
  report.work_exponent = loglog_slope(ds, work);
  report.wall_exponent = loglog_slope(ds, wall);

  std::ostringstream csv;
  csv << "dim,pool_size,mean_updates_per_sample,wall_ms_per_sample,"
         "rotate_fraction\n";
  for (const auto& r : report.rows) {
    csv << r.dim << ',' << r.pool_size << ',' << r.mean_updates_per_sample
        << ',' << r.wall_ms_per_sample << ',' << r.rotate_fraction << '\n';
  }
  csv << "exponent,work," << report.work_exponent << ",wall,"
      << report.wall_exponent << '\n';
  report.csv = csv.str();
  return report;
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
  json j{{"mixture", c.mixture},
         {"sigma", c.sigma},
         {"epsilon", c.epsilon},
         {"phi", c.phi},
         {"alpha", c.alpha},
         {"beta", c.beta},
         {"warmup", c.warmup},
         {"decay", c.decay},
         {"decay_horizon", c.decay_horizon},
         {"grid", c.grid},
         {"random_count", c.random_count},
         {"auto_domain", c.auto_domain},
         {"train_size", c.train_size},
         {"calib_size", c.calib_size},
         {"test_size", c.test_size},
         {"seed", c.seed},
         {"checkpoint_every", c.checkpoint_every},
         {"out_dir", c.out_dir}};
  if (c.domain_lo) j["domain_lo"] = *c.domain_lo;
  if (c.domain_hi) j["domain_hi"] = *c.domain_hi;
  return j.dump(2);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig c;
  c.mixture = j.value("mixture", c.mixture);
  c.sigma = j.value("sigma", c.sigma);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.phi = j.value("phi", c.phi);
  c.alpha = j.value("alpha", c.alpha);
  c.beta = j.value("beta", c.beta);
  c.warmup = j.value("warmup", c.warmup);
  c.decay = j.value("decay", c.decay);
  c.decay_horizon = j.value("decay_horizon", c.decay_horizon);
  c.grid = j.value("grid", c.grid);
  c.random_count = j.value("random_count", c.random_count);
  c.auto_domain = j.value("auto_domain", c.auto_domain);
  c.train_size = j.value("train_size", c.train_size);
  c.calib_size = j.value("calib_size", c.calib_size);
  c.test_size = j.value("test_size", c.test_size);
  c.seed = j.value("seed", c.seed);
  c.checkpoint_every = j.value("checkpoint_every", c.checkpoint_every);
  c.out_dir = j.value("out_dir", c.out_dir);
  if (j.contains("domain_lo")) c.domain_lo = j["domain_lo"].get<double>();
  if (j.contains("domain_hi")) c.domain_hi = j["domain_hi"].get<double>();
  return c;
}

}  // namespace valleys
