#include <doctest.h>

#include <cmath>
#include <random>

#include "latbound/error.hpp"
#include "latbound/quadrature.hpp"

using namespace latbound;
using namespace latbound::quad;

TEST_CASE("periodic rule is exact for trigonometric polynomials") {
  PointFn f = [](const Point& q, double* out) {
    out[0] = 3.0 + std::cos(q[0]) + 2.0 * std::cos(3 * q[0] - q[1]);
    out[1] = std::sin(q[1]) * std::sin(q[1]);
  };
  const auto v = trapezoid(2, 16, 2, f, true);
  CHECK(v[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("parallel and serial periodic kernels agree") {
  PointFn f = [](const Point& q, double* out) { out[0] = 1.0 / (2.5 - std::cos(q[0]) - std::cos(q[1])); };
  const auto a = trapezoid(2, 256, 1, f, true);
  const auto b = trapezoid_serial(2, 256, 1, f);
  CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
  // same bits for repeated parallel runs
  CHECK(trapezoid(2, 256, 1, f, true)[0] == a[0]);
}

TEST_CASE("adaptive periodic rule converges to a closed form") {
  // mean of 1/(z - cos q) over the circle is 1/sqrt(z^2 - 1)
  PointFn f = [](const Point& q, double* out) { out[0] = 1.0 / (1.2 - std::cos(q[0])); };
  const Result r = trapezoid_adaptive(1, 32, 8, 1, f, {1e-13, 1e-14}, true);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(1.0 / std::sqrt(1.44 - 1.0)).epsilon(1e-13));
}

TEST_CASE("graded Gauss-Kronrod handles an integrable corner singularity") {
  // int_0^1 int_0^1 1/sqrt(x^2+y^2) = 2 asinh(1)
  const Cell c{{0, 0}, {1, 1}};
  PointFn f = [](const Point& q, double* out) { out[0] = 1.0 / std::hypot(q[0], q[1]); };
  const Result r = gk_adaptive(2, {c}, 1, f, {1e-11, 1e-13}, 60, true);
  CHECK(r.value[0] == doctest::Approx(2.0 * std::asinh(1.0)).epsilon(1e-9));
  const Result s = gk_adaptive(2, {c}, 1, f, {1e-11, 1e-13}, 60, false);
  CHECK(s.value[0] == r.value[0]);
}

TEST_CASE("geometric breaks halve down to r_min") {
  const auto b = geometric_breaks(1.0, 1e-3);
  REQUIRE(b.size() >= 2);
  CHECK(b.front() <= 1e-3);
  CHECK(b.back() == 1.0);
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] > b[i - 1]);
}

TEST_CASE("t_alpha closed forms and errors") {
  CHECK(t_alpha(0, 1.0, 1.0) == doctest::Approx(pi / 4).epsilon(1e-13));
  CHECK(t_alpha(1, 1.0, 1.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-13));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double w = u(rng) * 3, r0 = u(rng);
    CHECK(t_alpha(0, w, r0) == doctest::Approx(std::atan(r0 / w) / w).epsilon(1e-12));
    CHECK(t_alpha(1, w, r0) == doctest::Approx(0.5 * std::log1p(r0 * r0 / (w * w))).epsilon(1e-12));
    CHECK(t_alpha(2.5, w, r0) <= std::pow(r0, 1.5) / 1.5);
  }
  CHECK_THROWS_AS(t_alpha(0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(t_alpha(-1, 1.0, 1.0), Error);
  CHECK_THROWS_AS(t_alpha(0, 1.0, 2.0), Error);
}
