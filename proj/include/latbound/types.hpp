#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <numbers>
#include <string>

namespace latbound {

/// Lattice site in Z^d, d <= 2. The second coordinate is zero when d == 1.
using Site = std::array<int, 2>;

/// Point on the torus (-pi, pi]^d; unused coordinates are zero.
using Point = std::array<double, 2>;

inline constexpr double pi = std::numbers::pi;

inline double dot(const Site& x, const Point& p) noexcept {
  return x[0] * p[0] + x[1] * p[1];
}

inline Site operator-(const Site& a, const Site& b) noexcept {
  return {a[0] - b[0], a[1] - b[1]};
}

inline Site operator-(const Site& a) noexcept { return {-a[0], -a[1]}; }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double t) noexcept {
  double r = std::remainder(t, 2.0 * pi);  // [-pi, pi]
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

/// Equality modulo 2 pi in every coordinate.
inline bool same_torus_point(const Point& a, const Point& b, int dim,
                             double tol = 1e-9) noexcept {
  for (int j = 0; j < dim; ++j)
    if (std::abs(wrap_angle(a[j] - b[j])) > tol) return false;
  return true;
}

enum class Edge { top, bottom };

inline const char* to_string(Edge e) noexcept {
  return e == Edge::top ? "top" : "bottom";
}

/// Distance of a real spectral parameter from one band edge, carried in log
/// form so that d = 2 gaps far below the double range stay representable.
struct EdgeDistance {
  Edge edge = Edge::top;
  double log_delta = 0.0;

  static EdgeDistance from_delta(Edge e, double delta) {
    return {e, std::log(delta)};
  }
  double delta() const noexcept { return std::exp(log_delta); }
};

}  // namespace latbound
