// Serial reference vs OpenMP kernels on Green-function workloads.
#include <benchmark/benchmark.h>

#include <cmath>

#include "latbound/green.hpp"
#include "latbound/quadrature.hpp"

using namespace latbound;

namespace {

quad::PointFn resolvent(double z) {
  return [z](const Point& q, double* out) {
    const double w = 2.0 - std::cos(q[0]) - std::cos(q[1]);
    out[0] = 1.0 / (z - w);
    out[1] = std::cos(q[0]) / (z - w);
  };
}

void BM_trapezoid_serial(benchmark::State& st) {
  const auto f = resolvent(4.01);
  for (auto _ : st) benchmark::DoNotOptimize(quad::trapezoid_serial(2, st.range(0), 2, f));
}

void BM_trapezoid_parallel(benchmark::State& st) {
  const auto f = resolvent(4.01);
  for (auto _ : st) benchmark::DoNotOptimize(quad::trapezoid(2, st.range(0), 2, f, true));
}

void BM_graded(benchmark::State& st, bool parallel) {
  quad::PointFn f = [](const Point& q, double* out) {
    out[0] = 1.0 / (1e-6 + 2.0 - std::cos(q[0]) - std::cos(q[1]));
  };
  for (auto _ : st)
    benchmark::DoNotOptimize(quad::graded_torus(2, 1e-4, 1, f, {1e-10, 1e-13}, 12, parallel));
}

void BM_green_d2(benchmark::State& st, bool parallel) {
  QuadratureSpec q = QuadratureSpec::defaults(2);
  q.parallel = parallel;
  const GreenEvaluator g(GeneratingCoefficients::laplacian(2), q);
  const std::vector<Site> xs{{0, 0}, {1, 0}, {1, 1}, {2, 0}};
  const EdgeDistance d = EdgeDistance::from_delta(Edge::top, std::pow(10.0, -double(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(g.green_batch(d, xs));
}

}  // namespace

BENCHMARK(BM_trapezoid_serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trapezoid_parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_graded, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_graded, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_green_d2, serial, false)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_green_d2, parallel, true)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
