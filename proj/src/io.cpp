#include "valleys/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "valleys/rng.hpp"

namespace valleys {
namespace {

using nlohmann::json;

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json config_to_json(const LearnerConfig& cfg) {
  return json{{"epsilon", cfg.epsilon},
              {"phi", cfg.phi},
              {"alpha", cfg.alpha},
              {"beta", cfg.beta},
              {"warmup_shifts", cfg.warmup_shifts},
              {"rng_seed", cfg.rng_seed},
              {"rng_algorithm", Rng::kAlgorithm},
              {"decay", cfg.decay},
              {"decay_horizon", cfg.decay_horizon}};
}

LearnerConfig config_from_json(const json& j) {
  LearnerConfig cfg;
  cfg.epsilon = j.at("epsilon").get<double>();
  cfg.phi = j.at("phi").get<double>();
  cfg.alpha = j.at("alpha").get<double>();
  cfg.beta = j.at("beta").get<double>();
  cfg.warmup_shifts = j.at("warmup_shifts").get<std::uint32_t>();
  cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  cfg.decay = j.value("decay", false);
  cfg.decay_horizon = j.value("decay_horizon", std::uint64_t{0});
  return cfg;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_samples_csv(const std::string& path,
                       const std::vector<LabeledSample>& samples) {
  std::ostringstream out;
  const std::size_t d = samples.empty() ? 0 : samples.front().x.size();
  for (std::size_t i = 0; i < d; ++i) {
    out << 'f' << i << ',';
  }
  out << "label\n";
  for (const auto& s : samples) {
    for (double v : s.x) out << format_double(v) << ',';
    out << s.label << '\n';
  }
  write_text_file(path, out.str());
}

std::vector<LabeledSample> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty sample file: " + path);
  }
  std::vector<LabeledSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    LabeledSample s;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      const char* comma = p;
      while (comma < end && *comma != ',') ++comma;
      double v = 0.0;
      const auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc{}) {
        throw std::runtime_error("bad numeric field in " + path);
      }
      if (comma == end) {
        s.label = static_cast<int>(v);
      } else {
        s.x.push_back(v);
      }
      p = comma + 1;
      if (comma == end) break;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string pool_to_json(const Pool& pool) {
  json planes = json::array();
  for (const auto& h : pool.planes) {
    json p{{"id", h.id},        {"w", h.w},
           {"theta", h.theta},  {"t", h.timer},
           {"shift_count", h.shift_count},
           {"c1", h.c1},        {"c2", h.c2}};
    if (h.has_means) {
      p["mu1"] = h.mu1;
      p["mu2"] = h.mu2;
    } else {
      p["mu1"] = nullptr;
      p["mu2"] = nullptr;
    }
    planes.push_back(std::move(p));
  }
  json j{{"dim", pool.dim},
         {"config", config_to_json(pool.config)},
         {"samples_seen", pool.diag.samples_processed},
         {"planes", std::move(planes)}};
  return j.dump(2);
}

Pool pool_from_json(const std::string& text) {
  const json j = json::parse(text);
  Pool pool;
  pool.dim = j.at("dim").get<int>();
  pool.config = config_from_json(j.at("config"));
  pool.diag.samples_processed = j.value("samples_seen", std::uint64_t{0});
  for (const auto& p : j.at("planes")) {
    Hyperplane h;
    h.id = p.at("id").get<int>();
    h.w = p.at("w").get<Vec>();
    h.theta = p.at("theta").get<double>();
    h.timer = p.at("t").get<std::uint64_t>();
    h.shift_count = p.at("shift_count").get<std::uint64_t>();
    h.c1 = p.at("c1").get<double>();
    h.c2 = p.at("c2").get<double>();
    if (!p.at("mu1").is_null()) {
      h.mu1 = p.at("mu1").get<Vec>();
      h.mu2 = p.at("mu2").get<Vec>();
      h.has_means = true;
    }
    pool.planes.push_back(std::move(h));
  }
  return pool;
}

void save_pool(const std::string& path, const Pool& pool) {
  write_text_file(path, pool_to_json(pool));
}

Pool load_pool(const std::string& path) {
  return pool_from_json(read_text_file(path));
}

std::string headset_to_json(const HeadSet& heads) {
  json arr = json::array();
  for (const auto& h : heads.heads) {
    arr.push_back(json{{"class", h.class_label},
                       {"plane", h.plane_id},
                       {"polarity", h.polarity},
                       {"score", h.score}});
  }
  return json{{"heads", std::move(arr)}}.dump(2);
}

HeadSet headset_from_json(const std::string& text) {
  const json j = json::parse(text);
  HeadSet set;
  for (const auto& h : j.at("heads")) {
    ClassHead head;
    head.class_label = h.at("class").get<int>();
    head.plane_id = h.at("plane").get<int>();
    head.polarity = h.at("polarity").get<int>();
    head.score = h.at("score").get<double>();
    set.heads.push_back(head);
  }
  return set;
}

void save_headset(const std::string& path, const HeadSet& heads) {
  write_text_file(path, headset_to_json(heads));
}

HeadSet load_headset(const std::string& path) {
  return headset_from_json(read_text_file(path));
}

std::string mixture_to_json(const MixtureSpec& spec) {
  json arr = json::array();
  for (const auto& c : spec.components) {
    arr.push_back(json{{"prior", c.prior},
                       {"mean", c.mean},
                       {"sigma", c.sigma},
                       {"class", c.class_label}});
  }
  return json{{"components", std::move(arr)}}.dump(2);
}

MixtureSpec mixture_from_json(const std::string& text) {
  const json j = json::parse(text);
  MixtureSpec spec;
  for (const auto& c : j.at("components")) {
    MixtureComponent mc;
    mc.prior = c.at("prior").get<double>();
    mc.mean = c.at("mean").get<Vec>();
    mc.sigma = c.at("sigma").get<double>();
    mc.class_label = c.at("class").get<int>();
    spec.components.push_back(std::move(mc));
  }
  spec.validate();
  return spec;
}

void save_mixture(const std::string& path, const MixtureSpec& spec) {
  write_text_file(path, mixture_to_json(spec));
}

MixtureSpec load_mixture(const std::string& path) {
  return mixture_from_json(read_text_file(path));
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
  std::ostringstream out;
  out << "sample_index,top1,top3,top5,wall_ms,shifts,rotations\n";
  for (const auto& cp : trace.checkpoints) {
    double top[6] = {-1, -1, -1, -1, -1, -1};
    for (const auto& [n, err] : cp.topn_errors) {
      if (n >= 1 && n <= 5) top[n] = err;
    }
    out << cp.sample_index << ',' << format_double(top[1]) << ','
        << format_double(top[3]) << ',' << format_double(top[5]) << ','
        << format_double(cp.wall_ms) << ',' << cp.shifts_fired << ','
        << cp.rotations_fired << '\n';
  }
  write_text_file(path, out.str());
}

std::string trace_to_json(const RunTrace& trace) {
  json arr = json::array();
  for (const auto& cp : trace.checkpoints) {
    json errors = json::object();
    for (const auto& [n, err] : cp.topn_errors) {
      errors[std::to_string(n)] = err;
    }
    arr.push_back(json{{"sample_index", cp.sample_index},
                       {"topn_errors", std::move(errors)},
                       {"wall_ms", cp.wall_ms},
                       {"rotations_fired", cp.rotations_fired},
                       {"shifts_fired", cp.shifts_fired}});
  }
  return json{{"checkpoints", std::move(arr)}}.dump(2);
}

}  // namespace valleys
