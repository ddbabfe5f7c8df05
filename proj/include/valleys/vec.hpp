#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace valleys {

/// Feature vector in R^d. Plain std::vector keeps the numeric state fully
/// transparent for serialization and cross-language bindings.
using Vec = std::vector<double>;

inline void check_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

inline double dot(const Vec& a, const Vec& b) {
  check_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec sub(const Vec& a, const Vec& b) {
  check_dim(a, b, "sub");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec add(const Vec& a, const Vec& b) {
  check_dim(a, b, "add");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vec scaled(const Vec& a, double c) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

/// y += c * x
inline void axpy(double c, const Vec& x, Vec& y) {
  check_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

/// In-place rescale to unit length. Returns the pre-normalization norm.
inline double normalize(Vec& a) {
  const double n = norm(a);
  if (n > 0.0) {
    for (double& x : a) x /= n;
  }
  return n;
}

inline Vec unit(const Vec& a) {
  Vec out = a;
  normalize(out);
  return out;
}

inline Vec basis_vector(std::size_t d, std::size_t i) {
  Vec out(d, 0.0);
  out[i] = 1.0;
  return out;
}

}  // namespace valleys
