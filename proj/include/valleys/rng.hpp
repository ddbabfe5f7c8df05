#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

namespace valleys {

/// Deterministic 64-bit RNG used everywhere randomness is needed.
///
/// Algorithm: xoshiro256++ (Blackman & Vigna), state seeded through
/// SplitMix64. Substreams are derived by hashing (seed, stream) through
/// SplitMix64, so generation can be split per component (per plane, per
/// sample) without correlation between streams. The generator identity
/// ("xoshiro256++/splitmix64") is recorded in run metadata; all floating
/// point draws go through explicit transforms below rather than
/// std::<distribution>, which keeps output identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

  Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    for (auto& s : state_) s = splitmix(x);
  }

  /// Child generator for an independent substream of the same root seed.
  Rng substream(std::uint64_t stream) const { return Rng(seed_, stream); }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 bits of mantissa.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Index in [0, n).
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  /// Standard normal via Marsaglia polar rejection (no trig functions).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  std::vector<double> normal_vector(std::size_t d) {
    std::vector<double> out(d);
    for (auto& x : out) x = normal();
    return out;
  }

  static constexpr const char* kAlgorithm = "xoshiro256++/splitmix64";

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_ = 0;
  std::uint64_t state_[4] = {};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace valleys
