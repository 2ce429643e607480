#include <doctest.h>

#include <cmath>

#include "latbound/error.hpp"
#include "latbound/green.hpp"
#include "latbound/morse.hpp"

using namespace latbound;

namespace {

const GreenEvaluator& g1() {
  static const GreenEvaluator g(GeneratingCoefficients::laplacian(1), QuadratureSpec::defaults(1));
  return g;
}
const GreenEvaluator& g2() {
  static const GreenEvaluator g(GeneratingCoefficients::laplacian(2), QuadratureSpec::defaults(2));
  return g;
}

// d = 2 square lattice: a = 2 K(k) / (pi (2 + delta)) with k = 2 / (2 + delta) on
// either side; K from the AGM of k' = sqrt(delta (4 + delta)) / (2 + delta)
double a2_elliptic(double delta) {
  double x = 1.0, y = std::sqrt(delta * (4.0 + delta)) / (2.0 + delta);
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (x + y);
    y = std::sqrt(x * y);
    x = m;
  }
  return 2.0 * (pi / (2.0 * x)) / (pi * (2.0 + delta));
}

// plain midpoint sum, independent of the library kernels
double brute2(const Site& x, double z, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double p = -pi + 2 * pi * (i + 0.5) / n, q = -pi + 2 * pi * (j + 0.5) / n;
      s += std::cos(x[0] * p + x[1] * q) / (z - (2 - std::cos(p) - std::cos(q)));
    }
  return s / (double(n) * n);
}

}  // namespace

TEST_CASE("d=1 a(z) matches 1/sqrt(z(z-2)) on both sides") {
  for (double z : {2.0 + 1e-12, 2.0 + 1e-6, 2.001, 2.1, 3.0, 10.0, 1e3})
    CHECK(g1().a_of_z(z) == doctest::Approx(1.0 / std::sqrt(z * (z - 2))).epsilon(1e-12));
  for (double z : {-1.0, -1e-3, -1e-9})
    CHECK(g1().a_of_z(z) == doctest::Approx(-1.0 / std::sqrt(z * (z - 2))).epsilon(1e-12));
  CHECK(g1().a_of_z(-1.0) == doctest::Approx(-1.0 / std::sqrt(3.0)));
}

TEST_CASE("d=1 G(x) matches the contour formula") {
  for (double z : {2.0 + 1e-8, 2.001, 3.0, -0.5}) {
    const double r = std::sqrt(z * (z - 2));
    const double beta = z > 2 ? 1.0 / ((z - 1) + r) : -1.0 / ((1 - z) + r);
    for (int x = -6; x <= 6; ++x) {
      const double expect = (z > 2 ? 1.0 : -1.0) * std::pow(-beta, std::abs(x)) / r;
      CHECK(g1().green_x({x, 0}, z) == doctest::Approx(expect).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("d=2 a(z) matches the elliptic integral in every regime") {
  CHECK(g2().a_of_z(5.0) == doctest::Approx(2.0 * std::comp_ellint_1(2.0 / 3.0) / (3.0 * pi)));
  for (double d : {1.0, 1e-2, 1e-3, 1e-5, 1e-8, 1e-12, 1e-20}) {
    CHECK(g2().a_at(EdgeDistance::from_delta(Edge::top, d)) == doctest::Approx(a2_elliptic(d)).epsilon(1e-11));
    CHECK(g2().a_at(EdgeDistance::from_delta(Edge::bottom, d)) == doctest::Approx(-a2_elliptic(d)).epsilon(1e-11));
  }
  // far below double resolution of z: log continuation vs K(k) ~ ln(4/k')
  for (double ld : {-60.0, -200.0, -1e4}) {
    const double a = g2().a_at({Edge::top, ld});
    CHECK(a == doctest::Approx(std::log(4.0) / pi - ld / (2 * pi)).epsilon(1e-10));
  }
}

TEST_CASE("d=2 G(x) agrees with a brute-force midpoint sum") {
  const double z = 5.0;
  for (Site x : {Site{0, 0}, Site{1, 0}, Site{2, 1}, Site{-1, 3}})
    CHECK(g2().green_x(x, z) == doctest::Approx(brute2(x, z, 400)).epsilon(1e-12));
  CHECK(g2().green_x({1, 0}, z) == doctest::Approx(g2().green_x({0, -1}, z)));
}

TEST_CASE("near-edge regime agrees with the periodic rule at the switch") {
  QuadratureSpec plain = QuadratureSpec::defaults(2);
  plain.edge_treatment = false;
  plain.max_refine = 8;
  const GreenEvaluator gp(GeneratingCoefficients::laplacian(2), plain);
  const EdgeDistance d = EdgeDistance::from_delta(Edge::top, 2e-3);
  const auto a = g2().green_batch(d, {{0, 0}, {1, 1}});
  const auto b = gp.green_batch(d, {{0, 0}, {1, 1}});
  CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-10));
  CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-10));
}

TEST_CASE("mirror maps the bottom chart to the top chart") {
  const GreenEvaluator m = g2().mirrored();
  for (double d : {1e-1, 1e-6}) {
    const double bottom = g2().a_at(EdgeDistance::from_delta(Edge::bottom, d));
    const double top = m.a_at(EdgeDistance::from_delta(Edge::top, d));
    CHECK(top == doctest::Approx(-bottom).epsilon(1e-14));
  }
}

TEST_CASE("spectral parameter inside the band is a domain error") {
  try {
    g1().a_of_z(1.0);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("kappa integrals for zero-sum potentials") {
  const auto p1 = LatticePotential::from_entries(1, {{{0, 0}, 1.0}, {{1, 0}, -1.0}});
  CHECK(g1().kappa_top(p1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(g1().kappa_bottom(p1) == doctest::Approx(2.0).epsilon(1e-10));
  // symmetric split of w into two equal halves gives exactly 1
  const auto p2 = LatticePotential::from_entries(2, {{{0, 0}, 1.0}, {{1, 0}, -1.0}});
  CHECK(g2().kappa_top(p2) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(g1().kappa_top(LatticePotential::from_entries(1, {{{0, 0}, 1.0}})), Error);
}

TEST_CASE("Morse constants match the Hessian values") {
  const MorseConstant m1 = extract_morse_constant(g1());
  CHECK(m1.pi_j0_max == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(m1.pi_j0_min == doctest::Approx(g1().hessian_pi_j0(Edge::bottom)).epsilon(1e-8));
  const MorseConstant m2 = extract_morse_constant(g2());
  CHECK(m2.pi_j0_max == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-7));
  CHECK(g2().hessian_pi_j0(Edge::top) == doctest::Approx(1.0 / (2 * pi)));
}

TEST_CASE("non-unique maximum is refused") {
  const auto twin = GeneratingCoefficients::from_entries(1, {{{2, 0}, 0.5}});
  CHECK_THROWS_AS(GreenEvaluator{twin}, Error);
}
