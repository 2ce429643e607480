#include <doctest.h>

#include <cmath>

#include "latbound/dispersion.hpp"
#include "latbound/error.hpp"

using namespace latbound;

namespace {
// brute-force symbol straight from the definition
double symbol_direct(const std::vector<CoeffEntry>& es, const Point& p) {
  std::complex<double> s = 0;
  for (const auto& e : es) s += e.value * std::polar(1.0, dot(e.x, p));
  return s.real();
}
}  // namespace

TEST_CASE("laplacian symbol and extrema") {
  const auto c1 = GeneratingCoefficients::laplacian(1);
  CHECK(symbol_eval(c1, {pi, 0}) == doctest::Approx(2.0));
  CHECK(symbol_eval(c1, {0.3, 0}) == doctest::Approx(1.0 - std::cos(0.3)));
  const auto c2 = GeneratingCoefficients::laplacian(2);
  const ExtremaReport r = find_extrema(c2);
  CHECK(r.e_max == doctest::Approx(4.0));
  CHECK(r.e_min == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.p_max[0] == pi);
  CHECK(r.p_max[1] == pi);
  CHECK(r.unique);
  CHECK(r.nondegenerate);
  CHECK(r.hess_max.determinant() == doctest::Approx(1.0));
}

TEST_CASE("hermitian closure fills missing partners") {
  const auto c = GeneratingCoefficients::from_entries(
      1, {{{0, 0}, 1.0}, {{1, 0}, std::complex<double>(-0.25, 0.1)}});
  CHECK(c.at({-1, 0}) == std::conj(std::complex<double>(-0.25, 0.1)));
  CHECK_FALSE(c.is_real_symmetric());
  CHECK(std::abs(symbol_eval_complex(c, {0.7, 0}).imag()) < 1e-15);
}

TEST_CASE("inconsistent hermitian partner is rejected") {
  CHECK_THROWS_AS(GeneratingCoefficients::from_entries(1, {{{1, 0}, 1.0}, {{-1, 0}, 2.0}}), Error);
}

TEST_CASE("symbol, gradient and hessian match direct sums and differences") {
  const std::vector<CoeffEntry> es{{{0, 0}, 2.0}, {{1, 0}, -0.7}, {{0, 1}, -0.3}, {{1, 1}, -0.1}};
  const auto c = GeneratingCoefficients::from_entries(2, es);
  const Point p{0.4, -1.1};
  std::vector<CoeffEntry> full = c.entries();
  CHECK(symbol_eval(c, p) == doctest::Approx(symbol_direct(full, p)).epsilon(1e-14));
  const double h = 1e-5;
  const Eigen::Vector2d g = symbol_gradient(c, p);
  for (int j = 0; j < 2; ++j) {
    Point a = p, b = p;
    a[j] += h;
    b[j] -= h;
    CHECK(g[j] == doctest::Approx((symbol_eval(c, a) - symbol_eval(c, b)) / (2 * h)).epsilon(1e-8));
  }
  const Eigen::Matrix2d H = symbol_hessian(c, p);
  Point a = p, b = p;
  a[0] += h;
  b[0] -= h;
  CHECK(H(0, 0) == doctest::Approx((symbol_eval(c, a) - 2 * symbol_eval(c, p) + symbol_eval(c, b)) / (h * h))
                       .epsilon(1e-4));
  CHECK(H(0, 1) == doctest::Approx(H(1, 0)));
}

TEST_CASE("anisotropic extrema found by grid scan and polish") {
  const auto c = GeneratingCoefficients::from_entries(
      2, {{{0, 0}, 2.0}, {{1, 0}, -0.7}, {{0, 1}, -0.3}, {{1, 1}, -0.1}});
  const ExtremaReport r = find_extrema(c);
  // brute-force maximum on a fine grid
  double best = -1e300;
  for (int i = 0; i < 400; ++i)
    for (int j = 0; j < 400; ++j)
      best = std::max(best, symbol_eval(c, {-pi + 2 * pi * i / 400, -pi + 2 * pi * j / 400}));
  CHECK(r.e_max >= best - 1e-12);
  CHECK(r.e_max == doctest::Approx(3.8));
  CHECK(r.e_min == doctest::Approx(-0.2));
}

TEST_CASE("degenerate and non-unique extrema") {
  // (1 - cos p)^2 has a flat minimum at p = 0
  const auto flat = GeneratingCoefficients::from_entries(
      1, {{{0, 0}, 1.5}, {{1, 0}, -1.0}, {{2, 0}, 0.25}});
  try {
    find_extrema(flat);
    FAIL("expected a degenerate extremum error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_extremum);
  }
  // cos 2p has maxima at 0 and pi
  const auto twin = GeneratingCoefficients::from_entries(1, {{{2, 0}, 0.5}});
  const ExtremaReport r = find_extrema(twin);
  CHECK_FALSE(r.unique);
  CHECK(r.local_maxima == 2);
}
