#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "latbound/birman.hpp"
#include "latbound/error.hpp"

using namespace latbound;

namespace {
const GreenEvaluator& g1() {
  static const GreenEvaluator g(GeneratingCoefficients::laplacian(1), QuadratureSpec::defaults(1));
  return g;
}
LatticePotential two_site() {
  return LatticePotential::from_entries(1, {{{0, 0}, 1.0}, {{1, 0}, -1.0}});
}
// d = 1 closed form G(x; z) above the band
double gc(int x, double z) {
  const double r = std::sqrt(z * (z - 2));
  return std::pow(-1.0 / ((z - 1) + r), std::abs(x)) / r;
}
}  // namespace

TEST_CASE("single site matrix is a(z)") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, 1.0}});
  const BSMatrix m = build_bs_matrix(g1(), p, 3.0);
  REQUIRE(m.mat.rows() == 1);
  CHECK(m.mat(0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(rank_one_split(m).q1_norm == 0.0);
}

TEST_CASE("two-site matrix, eigenvalues and traces") {
  const BSMatrix m = build_bs_matrix(g1(), two_site(), 3.0);
  CHECK(m.mat(0, 0) == doctest::Approx(0.5773503).epsilon(1e-7));
  CHECK(m.mat(0, 1) == doctest::Approx(-0.1547005).epsilon(1e-7));
  CHECK(m.mat(1, 0) == doctest::Approx(0.1547005).epsilon(1e-7));
  CHECK(m.mat(1, 1) == doctest::Approx(-0.5773503).epsilon(1e-7));
  // 2x2 characteristic polynomial from the closed-form kernel
  const double a = gc(0, 3.0), b = gc(1, 3.0);
  const double lam = std::sqrt(a * a - b * b);
  const BSSpectrum sp = bs_spectrum(m);
  CHECK(sp.eigenvalues[0] == doctest::Approx(lam).epsilon(1e-12));
  CHECK(sp.eigenvalues[1] == doctest::Approx(-lam).epsilon(1e-12));
  const TraceReport t = trace_identities(m, two_site());
  CHECK(std::abs(t.tr_b) < 1e-14);
  CHECK(t.tr_abs_b == doctest::Approx(2.0 / std::sqrt(3.0)));
}

TEST_CASE("negative potentials give no positive eigenvalue") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, -1.0}});
  CHECK(lambda_max(g1(), p, 3.0) == 0.0);
  const TraceReport t = trace_identities(build_bs_matrix(g1(), p, 3.0), p);
  CHECK(t.tr_b == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(t.tr_abs_b == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(count_bs_crossings(g1(), p, 10.0, 3.0) == 0);
}

TEST_CASE("crossing counts at z = 3") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, 1.0}});
  CHECK(count_bs_crossings(g1(), p, 1.0, 3.0) == 0);
  CHECK(count_bs_crossings(g1(), p, 2.0, 3.0) == 1);
}

TEST_CASE("rank-one part has the single eigenvalue kappa0") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, 1.0}, {{1, 0}, 0.5}, {{3, 0}, -0.25}});
  const RankOneSplit r = rank_one_split(g1(), p, 2.01);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.q_matrix.transpose() * r.q_matrix);
  int nonzero = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) nonzero += es.eigenvalues()[i] > 1e-12;
  CHECK(nonzero == 1);
  CHECK(r.q_eigenvalue == doctest::Approx(p.kappa0()));
}

TEST_CASE("principal eigenvalue near the edge follows the zero-sum law") {
  for (double d : {1e-4, 1e-6}) {
    const BSMatrix m = build_bs_matrix(g1(), two_site(), EdgeDistance::from_delta(Edge::top, d));
    const double l = bs_spectrum(m).eigenvalues[0];
    CHECK(l * l / m.a == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("inside the band is a domain error") {
  CHECK_THROWS_AS(build_bs_matrix(g1(), two_site(), 1.0), Error);
}

TEST_CASE("bottom edge counts use the same matrix") {
  const auto p = LatticePotential::from_entries(1, {{{0, 0}, -1.0}});
  // closed form e = 1 - sqrt(1 + mu^2) lies below the band for every mu
  const EdgeCount c = count_bs_edge(g1(), p, 0.5, Edge::bottom);
  CHECK(c.count == 1);
  CHECK(count_bs_edge(g1(), p, 0.5, Edge::top).count == 0);
}
