#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "valleys/vec.hpp"

namespace valleys {

/// Thrown by rotate_in_plane when the supplied frame is not orthonormal.
struct FrameNotOrthonormal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Degeneracy threshold for frame construction, scaled by the magnitude of
/// the inputs. Below this the construction reports no frame and the caller
/// skips the rotation for this sample.
inline double frame_epsilon(double scale) {
  return 1e-9 * std::max(1.0, scale);
}

/// w·x − θ for a unit normal w. Positive on the side w points into.
inline double signed_distance(const Vec& x, const Vec& w, double theta) {
  return dot(x, w) - theta;
}

/// Orthogonal projection of x onto the plane {p : w·p = θ}:
///   E = x + (θ − w·x) w
inline Vec project_onto_plane(const Vec& x, const Vec& w, double theta) {
  Vec e = x;
  axpy(theta - dot(w, x), w, e);
  return e;
}

/// Unit vector from x toward its projection E. Empty when x lies on the
/// plane (‖E − x‖ below the degeneracy threshold).
inline std::optional<Vec> toward_plane_unit(const Vec& x, const Vec& e) {
  Vec u = sub(e, x);
  const double n = norm(u);
  if (n <= frame_epsilon(std::max(norm(x), norm(e)))) return std::nullopt;
  for (double& c : u) c /= n;
  return u;
}

/// Intersection of the segment direction (μ2 − μ1) with the plane:
///   C = μ1 + (θ − w·μ1)(μ2 − μ1) / (w·(μ2 − μ1))
/// Empty when the mean-connecting line is parallel to the plane.
inline std::optional<Vec> intersection_point(const Vec& mu1, const Vec& mu2,
                                             const Vec& w, double theta) {
  Vec d = sub(mu2, mu1);
  const double denom = dot(w, d);
  const double scale = std::max({norm(mu1), norm(mu2), std::abs(theta)});
  if (std::abs(denom) <= frame_epsilon(scale)) return std::nullopt;
  Vec c = mu1;
  axpy((theta - dot(w, mu1)) / denom, d, c);
  return c;
}

/// Unit vector from C to E; both lie on the plane, so the result is
/// orthogonal to w. Empty when E and C coincide.
inline std::optional<Vec> in_plane_unit(const Vec& e, const Vec& c) {
  Vec v = sub(e, c);
  const double n = norm(v);
  if (n <= frame_epsilon(std::max(norm(e), norm(c)))) return std::nullopt;
  for (double& x : v) x /= n;
  return v;
}

/// Rotation frame for one update: u normal to the plane (from the sample
/// side), v in the plane, C the rotation point.
struct RotationFrame {
  Vec u;
  Vec v;
  Vec c;
};

/// Rotate p by angle α inside the 2-plane spanned by the orthonormal pair
/// (u, v), leaving the orthogonal complement fixed:
///   p' = p + [u v] ((cos α − 1, −sin α), (sin α, cos α − 1)) (p·u, p·v)ᵀ
/// Exact trigonometry; the small-angle forms are not used.
inline Vec rotate_in_plane(const Vec& p, const Vec& u, const Vec& v,
                           double alpha) {
  check_dim(p, u, "rotate_in_plane");
  check_dim(p, v, "rotate_in_plane");
  if (std::abs(dot(u, v)) > 1e-6 || std::abs(norm(u) - 1.0) > 1e-6 ||
      std::abs(norm(v) - 1.0) > 1e-6) {
    throw FrameNotOrthonormal("rotate_in_plane: frame not orthonormal");
  }
  const double pu = dot(p, u);
  const double pv = dot(p, v);
  const double c = std::cos(alpha) - 1.0;
  const double s = std::sin(alpha);
  Vec out = p;
  axpy(c * pu - s * pv, u, out);
  axpy(s * pu + c * pv, v, out);
  return out;
}

/// Full frame for rotating a plane (w, θ) in response to sample x, given
/// side-mean estimates μ1, μ2. Empty on any degenerate construction.
inline std::optional<RotationFrame> build_rotation_frame(const Vec& x,
                                                         const Vec& w,
                                                         double theta,
                                                         const Vec& mu1,
                                                         const Vec& mu2) {
  auto c = intersection_point(mu1, mu2, w, theta);
  if (!c) return std::nullopt;
  Vec e = project_onto_plane(x, w, theta);
  auto u = toward_plane_unit(x, e);
  if (!u) return std::nullopt;
  auto v = in_plane_unit(e, *c);
  if (!v) return std::nullopt;
  return RotationFrame{std::move(*u), std::move(*v), std::move(*c)};
}

}  // namespace valleys
