#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "latbound/error.hpp"
#include "latbound/oracle.hpp"

using namespace latbound;

TEST_CASE("free Dirichlet chain has the sine spectrum") {
  const auto c = GeneratingCoefficients::laplacian(1);
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, 1.0}});
  const TruncatedHamiltonian h = build_truncated(c, p, 0.0, 40, Boundary::dirichlet);
  std::vector<double> ev = dense_spectrum(h);
  const int n = h.side();
  std::vector<double> expect;
  for (int k = 1; k <= n; ++k) expect.push_back(1.0 - std::cos(k * pi / (n + 1)));
  std::sort(expect.begin(), expect.end());
  for (int k = 0; k < n; ++k) CHECK(ev[k] == doctest::Approx(expect[k]).epsilon(1e-12));
}

TEST_CASE("twisted periodic box puts the edge momentum on the grid") {
  const auto c = GeneratingCoefficients::laplacian(2);
  const auto p = LatticePotential::from_entries(2, {{{0, 0}, 1.0}});
  const Point tw = aligned_twist(32, {pi, pi}, 2);
  CHECK(tw[0] == pi);
  const TruncatedHamiltonian h = build_truncated(c, p, 0.0, 32, Boundary::periodic, tw);
  InertiaCounter ic(h);
  // exactly one free level at e_max = 4
  CHECK(ic.count_above(4.0 - 1e-9) == 1);
  CHECK(ic.count_above(4.0 + 1e-9) == 0);
}

TEST_CASE("inertia bisection agrees with dense diagonalisation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-3.0, 3.0);
  std::vector<PotentialEntry> es;
  for (int x = -6; x <= 6; x += 2) es.push_back({{x, 0}, v(rng)});
  const auto pot = LatticePotential::from_entries(1, es);
  const auto c = GeneratingCoefficients::laplacian(1);
  const TruncatedHamiltonian h = build_truncated(c, pot, 1.5, 60, Boundary::dirichlet);
  const std::vector<double> dense = dense_spectrum(h);
  const OracleSpectrum sp = oracle_spectrum(h, 0.0, 2.0, 1e-3);
  std::vector<double> above, below;
  for (double e : dense) {
    if (e > 2.001) above.push_back(e);
    if (e < -0.001) below.push_back(e);
  }
  std::sort(above.rbegin(), above.rend());
  REQUIRE(sp.n_plus == static_cast<int>(above.size()));
  REQUIRE(sp.n_minus == static_cast<int>(below.size()));
  CHECK(sp.n_plus + sp.n_minus > 0);
  for (std::size_t k = 0; k < above.size(); ++k)
    CHECK(sp.eigenvalues_above[k] == doctest::Approx(above[k]).epsilon(1e-12));
  for (std::size_t k = 0; k < below.size(); ++k)
    CHECK(sp.eigenvalues_below[k] == doctest::Approx(below[k]).epsilon(1e-12));
}

TEST_CASE("single-site bound state converges in L") {
  const auto c = GeneratingCoefficients::laplacian(1);
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, 1.0}});
  const double mu = 0.05, exact = 1.0 + std::sqrt(1.0 + mu * mu);
  double prev = 1e300;
  for (int L : {50, 100, 200}) {
    const OracleSpectrum sp =
        oracle_spectrum(build_truncated(c, p, mu, L, Boundary::dirichlet), 0.0, 2.0, 1e-6);
    REQUIRE(sp.n_plus == 1);
    const double err = std::abs(sp.eigenvalues_above[0] - exact);
    CHECK(err <= prev);
    prev = err;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("support escaping the box is a geometry error") {
  const auto c = GeneratingCoefficients::laplacian(1);
  const auto p = LatticePotential::from_entries(1, {{{20, 0}, 1.0}});
  try {
    build_truncated(c, p, 1.0, 32, Boundary::dirichlet);
    FAIL("expected geometry error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::geometry);
  }
}

TEST_CASE("default margins") {
  CHECK(default_margin(1, 2000) == 1e-3);
  CHECK(default_margin(1, 50) == doctest::Approx(10.0 / 2500));
  CHECK(default_margin(2, 100) == 1e-3);
}
