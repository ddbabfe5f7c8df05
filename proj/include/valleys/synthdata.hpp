#pragma once

#include <cstdint>
#include <vector>

#include "valleys/learner.hpp"
#include "valleys/vec.hpp"

namespace valleys {

/// One spherical Gaussian component of a benchmark mixture.
struct MixtureComponent {
  double prior = 0.0;
  Vec mean;
  double sigma = 1.0;  ///< std-dev of the σ²I covariance
  int class_label = 0;
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;

  std::size_t dim() const {
    return components.empty() ? 0 : components.front().mean.size();
  }
  void validate() const;
};

struct LabeledSample {
  Vec x;
  int label = 0;
};

/// Inter-mean distance, in units of σ, at which a balanced two-class
/// spherical pair has Bayes error 2e-2: 2·Q⁻¹(0.02).
inline constexpr double kTwoPairDelta = 4.1074978213835903;

/// n i.i.d. draws from the mixture; component choice by prior, then a
/// spherical Gaussian draw. Per-sample substreams make the output
/// independent of evaluation order.
std::vector<LabeledSample> gen_mixture(const MixtureSpec& spec, std::size_t n,
                                       std::uint64_t seed);

/// Four equal-prior classes in two close pairs (2-D), within-pair distance
/// kTwoPairDelta·σ, pair centers 4·Δ apart. Scales linearly with σ.
MixtureSpec two_pair_2d(double sigma);

/// The 50-D variant: pair axes on two coordinates, the pair separation
/// spread across a block of further coordinates.
MixtureSpec two_pair_50d(double sigma);

/// Generalization used by the scaling sweep; d ≥ 2.
MixtureSpec two_pair_nd(std::size_t d, double sigma);

/// Four-class mixture with priors {0.4, 0.3, 0.2, 0.1} and σ ratios
/// {1, 1, 2, 2}; separations keep the Bayes error ≤ 2e-2. Built to expose
/// the centroid-splitting failure of variance-based clustering.
MixtureSpec skewed_four_class(std::size_t d, double sigma);

/// Canonical grid placement region for the builtin benchmarks.
DomainBox benchmark_domain(std::size_t d, double sigma);

/// Maximum prior-weighted component density rule; the oracle the learner
/// is benchmarked against.
int bayes_classify(const MixtureSpec& spec, const Vec& x);

/// Monte-Carlo error of the Bayes rule on `n_mc` fresh draws.
double bayes_error_mc(const MixtureSpec& spec, std::size_t n_mc,
                      std::uint64_t seed);

}  // namespace valleys
