#include "latbound/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <omp.h>

#include "latbound/asymptotics.hpp"
#include "latbound/birman.hpp"
#include "latbound/error.hpp"
#include "latbound/morse.hpp"
#include "latbound/oracle.hpp"
#include "latbound/parallel.hpp"
#include "latbound/pipelines.hpp"
#include "latbound/quadrature.hpp"

namespace latbound {

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

LatticePotential pot1(std::vector<std::pair<int, double>> xs) {
  std::vector<PotentialEntry> e;
  for (auto [x, v] : xs) e.push_back({{x, 0}, v});
  return LatticePotential::from_entries(1, e);
}

LatticePotential pot2(std::vector<std::pair<Site, double>> xs) {
  std::vector<PotentialEntry> e;
  for (auto [x, v] : xs) e.push_back({x, v});
  return LatticePotential::from_entries(2, e);
}

// +delta_0, -delta_0, delta_0 - delta_1 in dimension d
std::vector<LatticePotential> canonical(int dim) {
  if (dim == 1) return {pot1({{0, 1.0}}), pot1({{0, -1.0}}), pot1({{0, 1.0}, {1, -1.0}})};
  return {pot2({{{0, 0}, 1.0}}), pot2({{{0, 0}, -1.0}}), pot2({{{0, 0}, 1.0}, {{1, 0}, -1.0}})};
}

const GreenEvaluator& green1() {
  static const GreenEvaluator g(GeneratingCoefficients::laplacian(1), QuadratureSpec::defaults(1));
  return g;
}

const GreenEvaluator& green2() {
  static const GreenEvaluator g(GeneratingCoefficients::laplacian(2), QuadratureSpec::defaults(2));
  return g;
}

// d = 1 closed forms for e(p) = 1 - cos p
double a_closed(double z) {
  return z > 2 ? 1.0 / std::sqrt(z * (z - 2.0)) : -1.0 / std::sqrt(z * (z - 2.0));
}

double g_closed(int x, double z) {
  const double r = std::sqrt(z * (z - 2.0));
  const double beta = 1.0 / ((z - 1.0) + r);
  return std::pow(-beta, std::abs(x)) / r;
}

Verdict c1_green_closed_form() {
  double worst_a = 0, worst_g = 0;
  std::vector<Site> xs;
  for (int x = -5; x <= 5; ++x) xs.push_back({x, 0});
  for (double z : {2.001, 2.1, 3.0, 10.0}) {
    const GreenEvaluator& g = green1();
    worst_a = std::max(worst_a, std::abs(g.a_of_z(z) - a_closed(z)));
    const std::vector<double> gv = g.green_batch(g.distance(z), xs);
    for (std::size_t k = 0; k < xs.size(); ++k)
      worst_g = std::max(worst_g, std::abs(gv[k] - g_closed(xs[k][0], z)));
  }
  return {worst_a < 1e-10 && worst_g < 1e-10,
          "max |a - closed| = " + sci(worst_a) + ", max |G - closed| = " + sci(worst_g)};
}

Verdict c2_t_alpha(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lw(-2.0, 1.0), ur(0.01, 1.0), ua(1.0, 4.0);
  const int n = 1000;
  std::vector<double> om(n), r0(n), al(n);
  for (int i = 0; i < n; ++i) {
    om[i] = std::pow(10.0, lw(rng));
    r0[i] = ur(rng);
    al[i] = std::nextafter(ua(rng), 5.0);
  }
  std::vector<double> e0(n), e1(n), excess(n);
  parallel_for(n, [&](int i) {
    for (int a = 0; a <= 1; ++a) {
      const double c = quad::t_alpha_closed(a, om[i], r0[i]);
      const double err = std::abs(quad::t_alpha(a, om[i], r0[i]) - c) / std::max(1.0, std::abs(c));
      (a == 0 ? e0 : e1)[i] = err;
    }
    const double bound = std::pow(r0[i], al[i] - 1.0) / (al[i] - 1.0);
    excess[i] = quad::t_alpha(al[i], om[i], r0[i]) - bound;
  });
  const double w0 = *std::max_element(e0.begin(), e0.end());
  const double w1 = *std::max_element(e1.begin(), e1.end());
  const double wx = *std::max_element(excess.begin(), excess.end());
  return {w0 < 1e-10 && w1 < 1e-10 && wx <= 0.0,
          "alpha=0 max err " + sci(w0) + ", alpha=1 max err " + sci(w1) +
              ", max (T - bound) for alpha>1 " + sci(wx)};
}

struct Instance {
  LatticePotential pot;
  EdgeDistance dist;
};

std::vector<Instance> random_instances(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ns(1, 4), xs(-3, 3), side(0, 1);
  std::uniform_real_distribution<double> vs(-2.0, 2.0), ld(-6.0, 1.0);
  std::vector<Instance> out;
  for (int i = 0; i < n; ++i) {
    const int dim = 1 + i % 2;
    std::set<Site> seen;
    std::vector<PotentialEntry> es;
    const int k = ns(rng);
    while (static_cast<int>(es.size()) < k) {
      Site s{xs(rng), dim == 2 ? xs(rng) : 0};
      double v = vs(rng);
      if (v == 0.0 || !seen.insert(s).second) continue;
      es.push_back({s, v});
    }
    const Edge e = side(rng) ? Edge::top : Edge::bottom;
    out.push_back({LatticePotential::from_entries(dim, es),
                   EdgeDistance::from_delta(e, std::pow(10.0, ld(rng)))});
  }
  return out;
}

// criteria 3 and 4 share one pass over the instance set
struct TraceRealness {
  double worst_trace = 0.0;
  double worst_imag = 0.0;
  std::string failure;
};

TraceRealness trace_realness(std::uint64_t seed) {
  const std::vector<Instance> inst = random_instances(seed, 1000);
  const int n = static_cast<int>(inst.size());
  std::vector<double> tr(n), im(n);
  std::vector<std::string> errs(n);
  parallel_for(n, [&](int i) {
    const GreenEvaluator& g = inst[i].pot.dim() == 1 ? green1() : green2();
    try {
      const BSMatrix m = build_bs_matrix(g, inst[i].pot, inst[i].dist);
      const double scale = 1.0 + std::abs(m.a) * inst[i].pot.abs_sum();
      const double tb = m.mat.trace(), tab = m.sym.trace();
      tr[i] = std::max(std::abs(tb - m.a * inst[i].pot.kappa0()),
                       std::abs(tab - std::abs(m.a) * inst[i].pot.abs_sum())) / scale;
      Eigen::EigenSolver<Eigen::MatrixXd> es(m.mat, false);
      for (int k = 0; k < es.eigenvalues().size(); ++k)
        im[i] = std::max(im[i], std::abs(es.eigenvalues()[k].imag()));
    } catch (const Error& e) {
      errs[i] = e.what();
    }
  });
  TraceRealness r;
  for (int i = 0; i < n; ++i) {
    r.worst_trace = std::max(r.worst_trace, tr[i]);
    r.worst_imag = std::max(r.worst_imag, im[i]);
    if (r.failure.empty() && !errs[i].empty()) r.failure = "instance " + std::to_string(i) + ": " + errs[i];
  }
  return r;
}

Verdict c5_bs_principle(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  std::bernoulli_distribution in(0.5);
  std::uniform_real_distribution<double> vs(-2.0, 2.0);
  std::vector<LatticePotential> pots;
  while (pots.size() < 50) {
    std::vector<PotentialEntry> es;
    for (int x = -5; x <= 5; ++x)
      if (in(rng)) {
        const double v = vs(rng);
        if (v != 0.0) es.push_back({{x, 0}, v});
      }
    if (!es.empty()) pots.push_back(LatticePotential::from_entries(1, es));
  }
  const std::vector<double> mus{0.5, 1.0, 2.0};
  const int n = static_cast<int>(pots.size() * mus.size());
  const GreenEvaluator& g = green1();
  const double margin = default_margin(1, 2000);
  std::vector<char> match(n);
  std::vector<double> resid(n);
  std::vector<int> states(n);
  parallel_for(n, [&](int k) {
    const LatticePotential& p = pots[k / 3];
    const double mu = mus[k % 3];
    const TruncatedHamiltonian h = build_truncated(g.coeffs(), p, mu, 2000, Boundary::dirichlet);
    const OracleSpectrum sp = oracle_spectrum(h, 0.0, 2.0, margin);
    const int bp = count_bs_crossings(g, p, mu, EdgeDistance::from_delta(Edge::top, margin));
    const int bm = count_bs_crossings(g, p, mu, EdgeDistance::from_delta(Edge::bottom, margin));
    match[k] = bp == sp.n_plus && bm == sp.n_minus;
    for (double e : sp.eigenvalues_above) resid[k] = std::max(resid[k], crossing_residual(g, p, mu, e));
    for (double e : sp.eigenvalues_below) resid[k] = std::max(resid[k], crossing_residual(g, p, mu, e));
    states[k] = sp.n_plus + sp.n_minus;
  });
  int mismatches = 0, total = 0;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    mismatches += !match[k];
    total += states[k];
    worst = std::max(worst, resid[k]);
  }
  return {mismatches == 0 && worst < 1e-6,
          std::to_string(n) + " cases, " + std::to_string(total) + " bound states, " +
              std::to_string(mismatches) + " count mismatches, max |mu lambda - 1| = " + sci(worst)};
}

Verdict c6_single_site() {
  const GreenEvaluator& g = green1();
  const LatticePotential p = pot1({{0, 1.0}});
  double ws = 0, wo = 0;
  bool ok = true;
  for (double mu : {0.01, 0.1, 1.0}) {
    const double exact = 1.0 + std::sqrt(1.0 + mu * mu);
    const auto s = solve_top_eigenvalue(g, p, mu);
    const OracleSpectrum sp =
        oracle_spectrum(build_truncated(g.coeffs(), p, mu, 2000, Boundary::dirichlet), 0.0, 2.0, 1e-6);
    if (!s || sp.n_plus != 1) {
      ok = false;
      continue;
    }
    ws = std::max(ws, std::abs(s->energy - exact));
    wo = std::max(wo, std::abs(sp.eigenvalues_above[0] - exact));
  }
  return {ok && ws < 1e-10 && wo < 1e-6,
          "solver max err " + sci(ws) + ", oracle (L=2000) max err " + sci(wo)};
}

Verdict c7_regimes() {
  const int expect[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  std::ostringstream os;
  bool ok = true;
  for (int dim = 1; dim <= 2; ++dim) {
    const GreenEvaluator& g = dim == 1 ? green1() : green2();
    const int L = dim == 1 ? 64 : 32;
    const std::vector<LatticePotential> pots = canonical(dim);
    const std::vector<double> mus{1e-2, 1e-3};
    std::vector<std::array<int, 4>> got(6);
    parallel_for(6, [&](int k) {
      const LatticePotential& p = pots[k / 2];
      const double mu = mus[k % 2];
      const ExtremaReport& ex = g.extrema();
      // periodic boxes whose momentum grid contains the edge point
      const TruncatedHamiltonian ht = build_truncated(g.coeffs(), p, mu, L, Boundary::periodic,
                                                      aligned_twist(L, ex.p_max, dim));
      const TruncatedHamiltonian hb = build_truncated(g.coeffs(), p, mu, L, Boundary::periodic,
                                                      aligned_twist(L, ex.p_min, dim));
      InertiaCounter it(ht), ib(hb);
      got[k] = {it.count_above(ex.e_max + 1e-12), ib.count_below(ex.e_min - 1e-12),
                count_bs_edge(g, p, mu, Edge::top).count, count_bs_edge(g, p, mu, Edge::bottom).count};
    });
    for (int k = 0; k < 6; ++k) {
      const int* e = expect[k / 2];
      const bool c = got[k][0] == e[0] && got[k][1] == e[1] && got[k][2] == e[0] && got[k][3] == e[1];
      if (!c) {
        ok = false;
        os << "d=" << dim << " example " << k / 2 << " mu=" << mus[k % 2] << " oracle (" << got[k][0]
           << "," << got[k][1] << ") bs (" << got[k][2] << "," << got[k][3] << "); ";
      }
    }
  }
  if (ok) os << "all 12 cases match via oracle and Birman-Schwinger";
  return {ok, os.str()};
}

Verdict c8_d1_pos() {
  const GreenEvaluator& g = green1();
  const double mu = 1e-3;
  const double gap_closed = mu * mu / (1.0 + std::sqrt(1.0 + mu * mu));
  const double e_closed = rel(std::sqrt(gap_closed) / mu, 1.0 / std::sqrt(2.0));
  const auto s1 = solve_top_eigenvalue(g, pot1({{0, 1.0}}), mu);
  const double e_solver = s1 ? rel(std::sqrt(s1->gap) / mu, 1.0 / std::sqrt(2.0)) : 1.0;
  const LatticePotential two = pot1({{0, 1.0}, {1, 0.5}});
  const MorseConstant mc = extract_morse_constant(g);
  const auto s2 = solve_top_eigenvalue(g, two, mu);
  const double e_two = s2 ? rel(std::sqrt(s2->gap) / mu, mc.pi_j0_max * two.kappa0()) : 1.0;
  return {e_closed < 1e-3 && e_solver < 1e-3 && e_two < 1e-3,
          "single site closed " + sci(e_closed) + ", single site solver " + sci(e_solver) +
              ", two-site solver vs extracted " + sci(e_two)};
}

Verdict c9_d1_zero() {
  const GreenEvaluator& g = green1();
  const LatticePotential p = pot1({{0, 1.0}, {1, -1.0}});
  std::ostringstream os;
  bool ok = true;
  for (auto [mu, tol] : {std::pair{1e-2, 1e-2}, std::pair{1e-3, 1e-3}}) {
    const auto t = solve_top_eigenvalue(g, p, mu);
    const auto b = solve_bottom_eigenvalue(g, p, mu);
    const double et = t ? rel(std::sqrt(t->gap) / (mu * mu), std::sqrt(2.0)) : 1.0;
    const double eb = b ? rel(std::sqrt(-b->energy) / (mu * mu), std::sqrt(2.0)) : 1.0;
    ok = ok && et < tol && eb < tol;
    os << "mu=" << mu << ": top " << sci(et) << ", bottom " << sci(eb) << "; ";
  }
  return {ok, os.str()};
}

// d = 2 ladders: strictly shrinking increments and a final relative error
Verdict d2_ladder(const LatticePotential& p, bool zero, double tol) {
  const GreenEvaluator& g = green2();
  const MuGrid grid = MuGrid::geometric(0.2, 0.5, 5);
  const double pj0 = extract_morse_edge(g, Edge::top).value;
  const AbsorptionFit f = fit_absorption(g, p, Edge::top, grid, pj0);
  bool shrinking = true;
  for (std::size_t k = 2; k < f.extracted.size(); ++k)
    shrinking = shrinking && std::abs(f.extracted[k] - f.extracted[k - 1]) <
                                 std::abs(f.extracted[k - 1] - f.extracted[k - 2]);
  const double last = f.rel_errors.back();
  std::ostringstream os;
  os << "ladder";
  for (double x : f.extracted) os << " " << fmt(x).substr(0, 10);
  os << " target " << fmt(f.predicted_constant).substr(0, 10) << (zero ? " (pi J0 kappa1)" : " (pi J0)")
     << ", final rel err " << sci(last) << (shrinking ? ", increments shrink" : ", increments do not shrink");
  return {shrinking && last < tol, os.str()};
}

Verdict c12_bargmann() {
  const GeneratingCoefficients c = GeneratingCoefficients::laplacian(1);
  std::vector<std::pair<int, double>> box, neg;
  for (int x = 0; x < 10; ++x) {
    box.push_back({x, 1.0});
    neg.push_back({x, -1.0});
  }
  const MuGrid grid = MuGrid::from_values({8.0, 4.0, 2.0, 1.0});
  const BargmannCheck b = bargmann_check(c, pot1(box), 0.5, grid, OracleParams{});
  const BargmannCheck bn = bargmann_check(c, pot1(neg), 0.5, grid, OracleParams{});
  const bool neg_zero = std::all_of(bn.counts_plus.begin(), bn.counts_plus.end(), [](int v) { return v == 0; });
  std::ostringstream os;
  os << "counts_plus (mu=8,4,2,1):";
  for (int v : b.counts_plus) os << " " << v;
  os << ", slope " << sci(b.fitted_slope_plus) << " (lsq " << sci(b.lsq_slope_plus) << ")"
     << ", negative box counts all zero: " << (neg_zero ? "yes" : "no");
  return {b.bound_holds && b.monotone && neg_zero, os.str()};
}

Verdict c13_properties(std::uint64_t seed) {
  std::ostringstream os;
  bool ok = true;
  auto fail = [&](const std::string& s) {
    ok = false;
    os << s << "; ";
  };
  const GreenEvaluator& g1 = green1();
  const GreenEvaluator& g2 = green2();

  // monotone principal curve and zero test
  std::vector<double> deltas;
  for (int k = 0; k < 40; ++k) deltas.push_back(std::pow(10.0, 1.0 - 9.0 * k / 39.0));
  std::vector<LatticePotential> mono = {pot1({{0, 1.0}}), pot1({{0, 1.0}, {1, -1.0}}),
                                        pot1({{0, 1.0}, {1, 0.5}}), pot2({{{0, 0}, 1.0}}),
                                        pot2({{{0, 0}, 1.0}, {{1, 0}, -1.0}})};
  for (const Instance& in : random_instances(seed + 13, 20)) {
    bool pos = false;
    for (const auto& e : in.pot.entries()) pos |= e.v > 0;
    if (pos) mono.push_back(in.pot);
  }
  const std::vector<LatticePotential> nonpos = {pot1({{0, -1.0}}), pot1({{0, -1.0}, {2, -0.5}}),
                                                pot2({{{0, 0}, -1.0}, {{1, 1}, -2.0}})};
  const int nm = static_cast<int>(mono.size());
  std::vector<std::string> msg(nm + nonpos.size());
  parallel_for(static_cast<int>(msg.size()), [&](int i) {
    const bool positive = i < nm;
    const LatticePotential& p = positive ? mono[i] : nonpos[i - nm];
    const GreenEvaluator& g = p.dim() == 1 ? g1 : g2;
    double prev = -1.0;
    for (double d : deltas) {  // z descends toward the edge
      const double l = lambda_max(g, p, EdgeDistance::from_delta(Edge::top, d));
      if (!positive && l != 0.0) {
        msg[i] = "nonpositive potential " + std::to_string(i - nm) + " has lambda " + sci(l);
        return;
      }
      if (positive && (l <= 0.0 || (prev >= 0.0 && !(l > prev)))) {
        msg[i] = "principal curve of potential " + std::to_string(i) + " not strictly monotone";
        return;
      }
      prev = l;
    }
  });
  for (const auto& m : msg)
    if (!m.empty()) fail(m);
  os << nm << " monotone curves, " << nonpos.size() << " zero curves checked; ";

  // rank-one remainder
  {
    const double q_single = rank_one_split(g1, pot1({{0, 1.0}}), 2.5).q1_norm;
    if (q_single != 0.0) fail("single-site remainder " + sci(q_single));
    const LatticePotential p = pot1({{0, 1.0}, {1, -1.0}});
    double prev = 1e300;
    for (double d : {1e-2, 1e-4, 1e-6}) {
      const BSMatrix m = build_bs_matrix(g1, p, EdgeDistance::from_delta(Edge::top, d));
      const double r = rank_one_split(m).q1_norm / m.a;
      if (!(r < prev)) fail("d=1 remainder ratio not decreasing at delta " + sci(d));
      prev = r;
    }
    const LatticePotential p2 = pot2({{{0, 0}, 1.0}, {{1, 0}, 1.0}});
    const double n2 = rank_one_split(build_bs_matrix(g2, p2, EdgeDistance::from_delta(Edge::top, 1e-2))).q1_norm;
    const double n6 = rank_one_split(build_bs_matrix(g2, p2, EdgeDistance::from_delta(Edge::top, 1e-6))).q1_norm;
    const double ratio = std::max(n2, n6) / std::min(n2, n6);
    if (!(ratio < 2.0)) fail("d=2 remainder ratio " + sci(ratio));
    os << "d=2 remainder ratio " << fmt(ratio).substr(0, 6) << "; ";
  }

  // trace minus principal eigenvalue stays bounded for v >= 0
  for (const LatticePotential& p : {pot1({{0, 1.0}, {1, 0.5}}), pot1({{0, 1.0}, {2, 1.0}, {3, 0.25}})}) {
    auto gap_at = [&](double d) {
      const BSMatrix m = build_bs_matrix(g1, p, EdgeDistance::from_delta(Edge::top, d));
      return std::abs(m.mat.trace() - bs_spectrum(m).eigenvalues.front());
    };
    const double ref = gap_at(1e-6);
    double sup = 0.0;
    for (int k = 0; k <= 24; ++k) sup = std::max(sup, gap_at(std::pow(10.0, -0.5 * k)));
    if (!(sup <= 10.0 * ref)) fail("trace - lambda sup " + sci(sup) + " vs 10x " + sci(ref));
  }

  // edge laws of the principal eigenvalue
  auto law = [&](const GreenEvaluator& g, const LatticePotential& p, double d, bool squared,
                 double target, double tol, const char* label) {
    const BSMatrix m = build_bs_matrix(g, p, EdgeDistance::from_delta(Edge::top, d));
    const BSSpectrum sp = bs_spectrum(m);
    const double l = sp.eigenvalues.front();
    const double e = rel(squared ? l * l / m.a : l / m.a, target);
    os << label << " " << sci(e) << "; ";
    if (!(e < tol)) fail(std::string(label) + " outside tolerance");
  };
  law(g1, pot1({{0, 1.0}}), 1e-8, false, 1.0, 1e-2, "lambda/a d=1 single");
  law(g1, pot1({{0, 1.0}, {1, 0.5}}), 1e-8, false, 1.5, 1e-2, "lambda/a d=1 two-site");
  const LatticePotential z1 = pot1({{0, 1.0}, {1, -1.0}});
  law(g1, z1, 1e-8, true, g1.kappa_top(z1), 1e-2, "lambda^2/a d=1");
  const LatticePotential z2 = pot2({{{0, 0}, 1.0}, {{1, 0}, -1.0}});
  const double k2 = g2.kappa_top(z2);
  law(g2, z2, 1e-6, true, k2, 5e-2, "lambda^2/a d=2");
  {
    // two-site algebra: lambda^2/a = kappa1 - (a - G(e1))^2 / a exactly
    const EdgeDistance d = EdgeDistance::from_delta(Edge::top, 1e-6);
    const std::vector<double> gv = g2.green_batch(d, {{0, 0}, {1, 0}});
    const double c = gv[0] + gv[1];  // a - G(e1), the edge phase flips G(e1)
    os << "predicted d=2 second-order term " << sci(c * c / (gv[0] * k2)) << "; ";
    const BSMatrix m = build_bs_matrix(g2, z2, EdgeDistance::from_delta(Edge::top, 1e-14));
    const double l = bs_spectrum(m).eigenvalues.front();
    os << "d=2 probe at delta 1e-14 " << sci(rel(l * l / m.a, k2)) << "; ";
  }

  // second eigenvalue bounded while the first diverges
  for (const LatticePotential& p : {pot1({{0, 1.0}, {1, 0.5}}), pot1({{0, 1.0}, {1, -1.0}})}) {
    const BSSpectrum a = bs_spectrum(build_bs_matrix(g1, p, EdgeDistance::from_delta(Edge::top, 1e-4)));
    const BSSpectrum b = bs_spectrum(build_bs_matrix(g1, p, EdgeDistance::from_delta(Edge::top, 1e-8)));
    const bool first_grows = b.eigenvalues[0] >= 5.0 * a.eigenvalues[0];
    const bool second_bounded = std::max(0.0, b.eigenvalues[1]) <= 2.0 * std::max(a.eigenvalues[1], 1e-12);
    if (!first_grows || !second_bounded) fail("second eigenvalue probe");
  }
  return {ok, os.str()};
}

Verdict c14_reproducible(const ExperimentConfig& cfg) {
  auto run_all = [&]() {
    std::vector<std::string> outs;
    for (const auto& name : pipeline_names()) {
      try {
        outs.push_back(run_pipeline(name, cfg).table.to_csv());
      } catch (const std::exception& e) {
        outs.push_back(std::string("error: ") + e.what());
      }
    }
    return outs;
  };
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::vector<std::string> a = run_all();
  omp_set_num_threads(std::max(2, saved));
  const std::vector<std::string> b = run_all();
  const std::vector<std::string> c = run_all();
  omp_set_num_threads(saved);
  std::ostringstream os;
  bool ok = true;
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bytes += a[i].size();
    if (a[i] != b[i] || b[i] != c[i]) {
      ok = false;
      os << pipeline_names()[i] << " differs; ";
    }
  }
  os << a.size() << " subcommands, " << bytes << " bytes compared across 1 and "
     << std::max(2, saved) << " threads";
  return {ok, os.str()};
}

}  // namespace

ExperimentConfig builtin_config() {
  return parse_config(nlohmann::json::parse(R"({
    "dispersion": {"preset": "laplacian", "dim": 1},
    "potential": [{"x": [0], "v": 1.0}, {"x": [1], "v": -1.0}],
    "gamma": 0.5,
    "mu_grid": {"values": [0.5, 0.25, 0.125]},
    "z": [2.5, 3.0, -0.5],
    "sites": [[0], [1], [2]],
    "oracle": {"L": 400}
  })"));
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  struct Spec {
    int id;
    const char* name;
  };
  static const Spec specs[] = {
      {1, "green closed form d=1"},
      {2, "t_alpha closed forms and bound"},
      {3, "trace identities"},
      {4, "realness of BS eigenvalues"},
      {5, "BS principle vs truncated oracle"},
      {6, "single-site exact solve"},
      {7, "small-mu regimes"},
      {8, "d=1 edge law kappa0 > 0"},
      {9, "d=1 edge law kappa0 = 0"},
      {10, "d=2 edge law kappa0 > 0"},
      {11, "d=2 edge law kappa0 = 0"},
      {12, "bound-state count structure"},
      {13, "BS property suites"},
      {14, "reproducible outputs"},
  };
  const ExperimentConfig cfg = opt.config ? *opt.config : builtin_config();
  std::optional<TraceRealness> tr;
  std::vector<CriterionResult> out;
  for (const Spec& s : specs) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), s.id) == opt.only.end())
      continue;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      switch (s.id) {
        case 1: v = c1_green_closed_form(); break;
        case 2: v = c2_t_alpha(opt.seed); break;
        case 3:
        case 4: {
          if (!tr) tr = trace_realness(opt.seed);
          if (!tr->failure.empty()) v = {false, tr->failure};
          else if (s.id == 3) v = {tr->worst_trace < 1e-9, "max relative residual " + sci(tr->worst_trace)};
          else v = {tr->worst_imag < 1e-8, "max imaginary part " + sci(tr->worst_imag)};
          break;
        }
        case 5: v = c5_bs_principle(opt.seed); break;
        case 6: v = c6_single_site(); break;
        case 7: v = c7_regimes(); break;
        case 8: v = c8_d1_pos(); break;
        case 9: v = c9_d1_zero(); break;
        case 10: v = d2_ladder(pot2({{{0, 0}, 1.0}}), false, 0.05); break;
        case 11: v = d2_ladder(pot2({{{0, 0}, 1.0}, {{1, 0}, -1.0}}), true, 0.07); break;
        case 12: v = c12_bargmann(); break;
        case 13: v = c13_properties(opt.seed); break;
        case 14: v = c14_reproducible(cfg); break;
      }
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    CriterionResult r{s.id, s.name, v.passed, v.detail,
                      std::chrono::duration<double>(Clock::now() - t0).count()};
    if (opt.on_result) opt.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

Table acceptance_table(const std::vector<CriterionResult>& results) {
  Table t;
  t.header = {"id", "name", "passed", "detail"};
  for (const auto& r : results) t.add({fmt(r.id), r.name, fmt(r.passed), r.detail});
  return t;
}

}  // namespace latbound
