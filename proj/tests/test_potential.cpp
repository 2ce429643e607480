#include <doctest.h>

#include <cmath>

#include "latbound/error.hpp"
#include "latbound/potential.hpp"

using namespace latbound;

TEST_CASE("kappa0, abs sum and range") {
  const auto p = LatticePotential::from_entries(1, {{{2, 0}, -0.5}, {{0, 0}, 1.0}, {{-3, 0}, 0.25}});
  CHECK(p.kappa0() == doctest::Approx(0.75));
  CHECK(p.abs_sum() == doctest::Approx(1.75));
  CHECK(p.range() == 3);
  CHECK(p.entries().front().x[0] == -3);
  CHECK(p.negated().kappa0() == doctest::Approx(-0.75));
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(LatticePotential::from_entries(1, {}), Error);
  CHECK_THROWS_AS(LatticePotential::from_entries(1, {{{0, 0}, 1.0}, {{0, 0}, 2.0}}), Error);
  CHECK_THROWS_AS(LatticePotential::from_entries(1, {{{0, 0}, NAN}}), Error);
}

TEST_CASE("decay report weights by |x|^(2-d+gamma)") {
  const auto p = LatticePotential::from_entries(2, {{{0, 0}, 1.0}, {{3, 4}, -2.0}, {{1, 0}, 0.5}});
  const DecayReport r = decay_report(p, 0.5);
  const double expect = 2.0 * std::pow(5.0, 0.5) + 0.5 * 1.0;
  CHECK(r.weighted_sum == doctest::Approx(expect));
  const auto origin = LatticePotential::from_entries(1, {{{0, 0}, 1.0}});
  CHECK_THROWS_AS(decay_report(origin, 0.5), Error);
  CHECK(decay_report(origin, 0.5, true).permissive_zero_weight);
}

TEST_CASE("potential symbol and sign split") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, 1.0}, {{1, 0}, -1.0}});
  CHECK(std::abs(potential_symbol(p, {0, 0})) < 1e-15);
  const auto s = sign_split(p);
  REQUIRE(s.sites.size() == 2);
  CHECK(s.signs[0] == 1);
  CHECK(s.signs[1] == -1);
  CHECK(s.sqrt_abs[1] == doctest::Approx(1.0));
}

TEST_CASE("compensated sum keeps small terms") {
  std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  CHECK(compensated_sum(xs) == 2.0);
}
