#include "valleys/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "valleys/rng.hpp"

namespace valleys {
namespace {

// All builtin layouts are expressed in units of σ and scaled at the end.
// 2-D keeps the classic [0, 24σ] box. Higher dimensions are laid out for a
// 7-planes-per-dimension grid over [0, 23.8σ] (offsets 1.7σ + 3.4σ·k):
//   - both within-pair valleys sit at 10.2σ, midway between the offsets at
//     8.5σ and 11.9σ, so each pair gap starts with two planes 1.7σ from
//     the valley (0.35σ inside the class modes — close enough to look
//     non-discriminative to the initial association, far enough that the
//     shift pressure reliably pulls them into the gap);
//   - the pair separation is spread over a block of 17 coordinates
//     centered on the offset at 15.3σ, so the between-column plane starts
//     as a coarse pair separator and no single coordinate opens a gap that
//     could trap receding planes.
constexpr double kDomainEdge2d = 24.0;
constexpr double kDomainEdgeNd = 23.8;
constexpr double kValleyNd = 10.2;
constexpr double kSpreadMid = 15.3;
constexpr std::size_t kSpreadDims = 17;

MixtureSpec scale_spec(MixtureSpec spec, double sigma) {
  for (auto& c : spec.components) {
    for (double& m : c.mean) m *= sigma;
    c.sigma *= sigma;
  }
  return spec;
}

}  // namespace

void MixtureSpec::validate() const {
  if (components.empty()) {
    throw std::invalid_argument("MixtureSpec: no components");
  }
  double total = 0.0;
  const std::size_t d = components.front().mean.size();
  for (const auto& c : components) {
    if (c.prior <= 0.0 || c.prior > 1.0 || c.sigma <= 0.0 ||
        c.mean.size() != d) {
      throw std::invalid_argument("MixtureSpec: bad component");
    }
    total += c.prior;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("MixtureSpec: priors must sum to 1");
  }
}

std::vector<LabeledSample> gen_mixture(const MixtureSpec& spec, std::size_t n,
                                       std::uint64_t seed) {
  spec.validate();
  const std::size_t d = spec.dim();
  std::vector<LabeledSample> out;
  out.reserve(n);
  Rng root(seed);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.substream(i);
    const double r = rng.uniform01();
    double acc = 0.0;
    const MixtureComponent* chosen = &spec.components.back();
    for (const auto& c : spec.components) {
      acc += c.prior;
      if (r < acc) {
        chosen = &c;
        break;
      }
    }
    LabeledSample s;
    s.label = chosen->class_label;
    s.x.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      s.x[k] = chosen->mean[k] + chosen->sigma * rng.normal();
    }
    out.push_back(std::move(s));
  }
  return out;
}

MixtureSpec two_pair_2d(double sigma) {
  if (sigma <= 0) throw std::invalid_argument("two_pair_2d: sigma > 0");
  const double half = kTwoPairDelta / 2.0;
  // Pairs sit on the diagonal, 4Δ apart, with both within-pair axes along
  // e0. Each pair-gap holds one grid plane of the canonical 4-per-dim grid
  // (at 9 and 21), roughly 1σ and 0.6σ from the two valleys, and neither
  // pair reaches the other pair's valley plane with its β band, so the
  // captured planes stay clean and near-vertical.
  const double valley = 10.0;
  const double row = 6.0;
  const double shift = 4.0 * kTwoPairDelta / std::sqrt(2.0);
  MixtureSpec spec;
  spec.components = {
      {0.25, {valley - half, row}, 1.0, 0},
      {0.25, {valley + half, row}, 1.0, 1},
      {0.25, {valley - half + shift, row + shift}, 1.0, 2},
      {0.25, {valley + half + shift, row + shift}, 1.0, 3},
  };
  return scale_spec(std::move(spec), sigma);
}

MixtureSpec two_pair_nd(std::size_t d, double sigma) {
  if (d < 2) throw std::invalid_argument("two_pair_nd: d >= 2 required");
  if (sigma <= 0) throw std::invalid_argument("two_pair_nd: sigma > 0");
  if (d == 2) return two_pair_2d(sigma);

  const double half = kTwoPairDelta / 2.0;
  const std::size_t spread_dims = std::min(kSpreadDims, d - 2);
  const double per_dim_sep =
      4.0 * kTwoPairDelta / std::sqrt(static_cast<double>(spread_dims));

  // Both within-pair valleys share the same coordinate value; each pair
  // lies exactly on the other pair's separator, so those planes learn to
  // rotate away from the foreign cluster instead of being poisoned by it.
  Vec base(d, kValleyNd);
  Vec mean_a1 = base, mean_a2 = base, mean_b1 = base, mean_b2 = base;
  mean_a1[0] = kValleyNd - half;
  mean_a2[0] = kValleyNd + half;
  mean_b1[1] = kValleyNd - half;
  mean_b2[1] = kValleyNd + half;
  for (std::size_t k = 0; k < spread_dims; ++k) {
    mean_a1[2 + k] = mean_a2[2 + k] = kSpreadMid - per_dim_sep / 2.0;
    mean_b1[2 + k] = mean_b2[2 + k] = kSpreadMid + per_dim_sep / 2.0;
  }

  MixtureSpec spec;
  spec.components = {
      {0.25, std::move(mean_a1), 1.0, 0},
      {0.25, std::move(mean_a2), 1.0, 1},
      {0.25, std::move(mean_b1), 1.0, 2},
      {0.25, std::move(mean_b2), 1.0, 3},
  };
  return scale_spec(std::move(spec), sigma);
}

MixtureSpec two_pair_50d(double sigma) { return two_pair_nd(50, sigma); }

MixtureSpec skewed_four_class(std::size_t d, double sigma) {
  if (d < 3) throw std::invalid_argument("skewed_four_class: d >= 3 required");
  if (sigma <= 0) throw std::invalid_argument("skewed_four_class: sigma > 0");

  const double delta_ab = 4.2;  // σ-units; priors 0.4/0.3 keep pair error small
  const double delta_cd = 9.0;  // wide pair, σ ratio 2
  const double spread_total = 13.0;
  const std::size_t spread_dims = std::min(kSpreadDims, d - 2);
  const double per_dim_sep =
      spread_total / std::sqrt(static_cast<double>(spread_dims));

  Vec base(d, kValleyNd);
  Vec a = base, b = base, c = base, e = base;
  a[0] = kValleyNd - delta_ab / 2.0;
  b[0] = kValleyNd + delta_ab / 2.0;
  c[1] = kValleyNd - delta_cd / 2.0;
  e[1] = kValleyNd + delta_cd / 2.0;
  for (std::size_t k = 0; k < spread_dims; ++k) {
    a[2 + k] = b[2 + k] = kSpreadMid - per_dim_sep / 2.0;
    c[2 + k] = e[2 + k] = kSpreadMid + per_dim_sep / 2.0;
  }

  MixtureSpec spec;
  spec.components = {
      {0.4, std::move(a), 1.0, 0},
      {0.3, std::move(b), 1.0, 1},
      {0.2, std::move(c), 2.0, 2},
      {0.1, std::move(e), 2.0, 3},
  };
  return scale_spec(std::move(spec), sigma);
}

DomainBox benchmark_domain(std::size_t d, double sigma) {
  DomainBox box;
  box.lo.assign(d, 0.0);
  box.hi.assign(d, (d == 2 ? kDomainEdge2d : kDomainEdgeNd) * sigma);
  return box;
}

int bayes_classify(const MixtureSpec& spec, const Vec& x) {
  double best = -1e300;
  int label = spec.components.front().class_label;
  for (const auto& c : spec.components) {
    double q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = x[i] - c.mean[i];
      q += r * r;
    }
    const double score = std::log(c.prior) -
                         static_cast<double>(x.size()) * std::log(c.sigma) -
                         q / (2.0 * c.sigma * c.sigma);
    if (score > best) {
      best = score;
      label = c.class_label;
    }
  }
  return label;
}

double bayes_error_mc(const MixtureSpec& spec, std::size_t n_mc,
                      std::uint64_t seed) {
  if (n_mc == 0) throw std::invalid_argument("bayes_error_mc: n_mc >= 1");
  const auto samples = gen_mixture(spec, n_mc, seed);
  std::size_t wrong = 0;
  for (const auto& s : samples) {
    if (bayes_classify(spec, s.x) != s.label) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(n_mc);
}

}  // namespace valleys
