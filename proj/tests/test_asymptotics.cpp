#include <doctest.h>

#include <cmath>

#include "latbound/asymptotics.hpp"
#include "latbound/error.hpp"
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
LatticePotential site(double v) { return LatticePotential::from_entries(1, {{{0, 0}, v}}); }
}  // namespace

TEST_CASE("single-site energies from the closed form") {
  for (double mu : {1.0, 0.3, 0.01}) {
    const auto s = solve_top_eigenvalue(g1(), site(1.0), mu);
    REQUIRE(s);
    CHECK(s->energy == doctest::Approx(1.0 + std::sqrt(1.0 + mu * mu)).epsilon(1e-14));
  }
  const auto b = solve_bottom_eigenvalue(g1(), site(-1.0), 1.0);
  REQUIRE(b);
  CHECK(b->energy == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK_FALSE(solve_top_eigenvalue(g1(), site(-1.0), 0.5));
  CHECK_FALSE(solve_bottom_eigenvalue(g1(), site(1.0), 0.5));
}

TEST_CASE("zero-sum potential binds on both sides and matches the oracle") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, 1.0}, {{1, 0}, -1.0}});
  const auto b = solve_bottom_eigenvalue(g1(), p, 0.3);
  const auto t = solve_top_eigenvalue(g1(), p, 0.3);
  REQUIRE(b);
  REQUIRE(t);
  CHECK(b->energy < 0.0);
  const OracleSpectrum sp = oracle_spectrum(
      build_truncated(g1().coeffs(), p, 0.3, 2000, Boundary::dirichlet), 0.0, 2.0, 1e-4);
  REQUIRE(sp.n_plus == 1);
  REQUIRE(sp.n_minus == 1);
  CHECK(sp.eigenvalues_above[0] == doctest::Approx(t->energy).epsilon(1e-10));
  CHECK(sp.eigenvalues_below[0] == doctest::Approx(b->energy).epsilon(1e-10));
}

TEST_CASE("mirror symmetry is exact") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, -1.0}, {{2, 0}, 0.4}});
  const auto b = solve_bottom_eigenvalue(g1(), p, 0.2);
  const auto t = solve_top_eigenvalue(g1().mirrored(), p.negated(), 0.2);
  REQUIRE(b);
  REQUIRE(t);
  CHECK(b->energy == -t->energy);
}

TEST_CASE("energy increases with mu") {
  double prev = 2.0;
  for (double mu : {0.05, 0.1, 0.2, 0.4}) {
    const auto s = solve_top_eigenvalue(g1(), site(1.0), mu);
    REQUIRE(s);
    CHECK(s->energy > prev);
    prev = s->energy;
  }
}

TEST_CASE("d=2 solver agrees with a small box at large coupling") {
  const auto p = LatticePotential::from_entries(2, {{{0, 0}, 1.0}});
  const auto s = solve_top_eigenvalue(g2(), p, 3.0);
  REQUIRE(s);
  const OracleSpectrum sp = oracle_spectrum(
      build_truncated(g2().coeffs(), p, 3.0, 40, Boundary::dirichlet), 0.0, 4.0, 1e-3);
  REQUIRE(sp.n_plus == 1);
  CHECK(sp.eigenvalues_above[0] == doctest::Approx(s->energy).epsilon(1e-10));
}

TEST_CASE("absorption fit for the single site") {
  const AbsorptionFit f = fit_absorption(g1(), site(1.0), Edge::top, MuGrid::from_values({0.04, 0.02, 0.01}));
  CHECK(f.regime == Regime::kappa0_pos);
  CHECK(f.predicted_constant == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  const double mu = 0.01;
  const double closed = std::sqrt(std::sqrt(1 + mu * mu) - 1) / mu;
  CHECK(f.extracted.back() == doctest::Approx(closed).epsilon(1e-12));
  CHECK(f.rel_errors.back() == doctest::Approx(1.25e-5).epsilon(0.01));
  for (std::size_t i = 1; i < f.rel_errors.size(); ++i) CHECK(f.rel_errors[i] < 0.7 * f.rel_errors[i - 1]);
  CHECK(f.convergence_order == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("regime mismatch is a precondition error") {
  try {
    fit_absorption(g1(), site(-1.0), Edge::top, MuGrid::from_values({0.1}));
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
}

TEST_CASE("mu grids") {
  CHECK(MuGrid::geometric(1.0, 0.5, 3).values == std::vector<double>{1.0, 0.5, 0.25});
  CHECK_THROWS_AS(MuGrid::from_values({1.0, 2.0}), Error);
  CHECK_THROWS_AS(MuGrid::geometric(1.0, 1.5, 3), Error);
}

TEST_CASE("Bargmann structure for a single site") {
  const OracleParams op{400, Boundary::dirichlet, 1e-3};
  const BargmannCheck b = bargmann_check(GeneratingCoefficients::laplacian(1),
                                         LatticePotential::from_entries(1, {{{0, 0}, 1.0}, {{1, 0}, 1e-9}}),
                                         0.5, MuGrid::from_values({2.0, 1.0, 0.5}), op);
  for (int c : b.counts_plus) CHECK(c == 1);
  CHECK(b.fitted_slope_plus == 0.0);
  CHECK(b.bound_holds);
  CHECK(b.monotone);
}
