#include "latbound/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latbound/error.hpp"
#include "latbound/morse.hpp"
#include "latbound/parallel.hpp"
#include "latbound/roots.hpp"

namespace latbound {

MuGrid MuGrid::geometric(double start, double factor, int count) {
  if (!(start > 0.0)) raise(ErrorKind::parameter, "mu grid start must be > 0");
  if (!(factor > 0.0 && factor < 1.0)) raise(ErrorKind::parameter, "mu grid factor must lie in (0,1)");
  if (count < 1) raise(ErrorKind::parameter, "mu grid count must be >= 1");
  MuGrid g;
  for (int k = 0; k < count; ++k) g.values.push_back(start * std::pow(factor, k));
  return g;
}

MuGrid MuGrid::from_values(std::vector<double> v) {
  if (v.empty()) raise(ErrorKind::parameter, "mu grid is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) raise(ErrorKind::parameter, "mu values must be > 0");
    if (i > 0 && !(v[i] < v[i - 1])) raise(ErrorKind::parameter, "mu values must strictly decrease");
  }
  return {std::move(v)};
}

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::kappa0_pos: return "kappa0_pos";
    case Regime::kappa0_neg: return "kappa0_neg";
    case Regime::kappa0_zero: return "kappa0_zero";
  }
  return "unknown";
}

Regime detect_regime(const LatticePotential& pot) {
  const double k0 = pot.kappa0();
  if (std::abs(k0) <= 1e-12 * std::max(1.0, pot.abs_sum())) return Regime::kappa0_zero;
  return k0 > 0 ? Regime::kappa0_pos : Regime::kappa0_neg;
}

std::optional<EdgeSolution> solve_top_eigenvalue(const GreenEvaluator& g,
                                                 const LatticePotential& pot, double mu) {
  if (!(mu > 0.0)) raise(ErrorKind::parameter, "mu must be > 0");
  bool any_positive = false;
  for (const auto& e : pot.entries()) any_positive |= e.v > 0.0;
  if (!any_positive) return std::nullopt;  // lambda vanishes identically

  auto F = [&](double ld) { return mu * lambda_max(g, pot, EdgeDistance{Edge::top, ld}) - 1.0; };
  const bool one_d = g.dim() == 1;

  double hi = 0.0;
  double f_hi = F(hi);
  while (f_hi >= 0.0) {
    hi += std::log(2.0);
    if (hi > std::log(1e12)) raise(ErrorKind::solver, "no upper bracket below gap 1e12");
    f_hi = F(hi);
  }
  const double floor = one_d ? std::log(1e-30) : -1e8;
  double lo = hi, step = one_d ? std::log(16.0) : 1.0;
  double f_lo = f_hi;
  while (f_lo < 0.0) {
    hi = lo;
    f_hi = f_lo;
    if (lo <= floor) return std::nullopt;
    lo = std::max(floor, lo - step);
    if (!one_d) step *= 2.0;
    f_lo = F(lo);
  }

  EdgeSolution s;
  s.edge = Edge::top;
  s.mu = mu;
  if (one_d) {
    // sqrt(gap) as unknown
    auto f = [&](double r) { return F(2.0 * std::log(r)); };
    const RootResult rr = brent(f, std::exp(0.5 * lo), std::exp(0.5 * hi), 0.0);
    s.log_gap = 2.0 * std::log(rr.x);
    s.gap = rr.x * rr.x;
    s.iterations = rr.iterations;
  } else {
    const RootResult rr = brent(F, lo, hi, 1e-13 * std::max(1.0, std::abs(lo)));
    s.log_gap = rr.x;
    s.gap = std::exp(rr.x);
    s.iterations = rr.iterations;
  }
  s.energy = g.extrema().e_max + s.gap;
  return s;
}

std::optional<EdgeSolution> solve_bottom_eigenvalue(const GreenEvaluator& g,
                                                    const LatticePotential& pot, double mu) {
  auto s = solve_top_eigenvalue(g.mirrored(), pot.negated(), mu);
  if (!s) return s;
  s->edge = Edge::bottom;
  s->energy = -s->energy;
  return s;
}

AbsorptionFit fit_absorption(const GreenEvaluator& g, const LatticePotential& pot, Edge edge,
                             const MuGrid& grid, std::optional<double> pi_j0) {
  AbsorptionFit fit;
  fit.edge = edge;
  fit.dim = g.dim();
  fit.mu_grid = grid;
  fit.regime = detect_regime(pot);
  const bool zero = fit.regime == Regime::kappa0_zero;
  if (edge == Edge::top && fit.regime == Regime::kappa0_neg)
    raise(ErrorKind::precondition, "kappa0 < 0 has no top eigenvalue for small mu");
  if (edge == Edge::bottom && fit.regime == Regime::kappa0_pos)
    raise(ErrorKind::precondition, "kappa0 > 0 has no bottom eigenvalue for small mu");
  fit.kappa = zero ? g.kappa_edge(edge, pot) : std::abs(pot.kappa0());
  fit.pi_j0 = pi_j0 ? *pi_j0 : extract_morse_edge(g, edge).value;
  fit.predicted_constant = fit.pi_j0 * fit.kappa;

  const int n = static_cast<int>(grid.values.size());
  fit.gaps.assign(n, 0.0);
  fit.log_gaps.assign(n, 0.0);
  fit.extracted.assign(n, 0.0);
  fit.rel_errors.assign(n, 0.0);
  std::vector<char> clear(n, 0);
  const GreenEvaluator gm = edge == Edge::top ? g : g.mirrored();
  const LatticePotential pm = edge == Edge::top ? pot : pot.negated();

  parallel_for(n, [&](int i) {
    const double mu = grid.values[i];
    const auto sol = solve_top_eigenvalue(gm, pm, mu);
    if (!sol) {
      std::ostringstream os;
      os << "no " << to_string(edge) << " eigenvalue found at mu = " << mu;
      raise(ErrorKind::solver, os.str());
    }
    fit.gaps[i] = sol->gap;
    fit.log_gaps[i] = sol->log_gap;
    const double p = zero ? mu * mu : mu;
    fit.extracted[i] = fit.dim == 1 ? std::exp(0.5 * sol->log_gap) / p : -1.0 / (p * sol->log_gap);
    fit.rel_errors[i] = std::abs(fit.extracted[i] / fit.predicted_constant - 1.0);
    // second branch stays below 1/mu down to the ladder floor
    const double floor = fit.dim == 1 ? std::log(1e-24) : -1e8;
    const BSSpectrum sp = bs_spectrum(build_bs_matrix(gm, pm, EdgeDistance{Edge::top, floor}));
    clear[i] = sp.eigenvalues.size() < 2 || mu * sp.eigenvalues[1] < 1.0;
  });
  fit.second_branch_clear.assign(clear.begin(), clear.end());
  fit.extracted_constant = fit.extracted.back();
  if (n >= 2 && fit.rel_errors[n - 1] > 0 && fit.rel_errors[n - 2] > 0)
    fit.convergence_order = std::log(fit.rel_errors[n - 2] / fit.rel_errors[n - 1]) /
                            std::log(grid.values[n - 2] / grid.values[n - 1]);
  return fit;
}

BargmannCheck bargmann_check(const GeneratingCoefficients& c, const LatticePotential& pot,
                             double gamma, const MuGrid& grid, const OracleParams& op,
                             bool permissive) {
  const DecayReport dr = decay_report(pot, gamma, permissive);
  const ExtremaReport ex = find_extrema(c);
  BargmannCheck b;
  b.mu_grid = grid;
  b.weighted_sum = dr.weighted_sum;
  const int n = static_cast<int>(grid.values.size());
  b.counts_plus.assign(n, 0);
  b.counts_minus.assign(n, 0);
  const double margin = op.margin > 0.0 ? op.margin : default_margin(c.dim(), op.L);
  parallel_for(n, [&](int i) {
    const TruncatedHamiltonian h = build_truncated(c, pot, grid.values[i], op.L, op.boundary);
    const OracleSpectrum sp = oracle_spectrum(h, ex.e_min, ex.e_max, margin);
    b.counts_plus[i] = sp.n_plus;
    b.counts_minus[i] = sp.n_minus;
  });

  auto slopes = [&](const std::vector<int>& counts, double& envelope, double& lsq) {
    double num = 0.0, den = 0.0;
    envelope = 0.0;
    for (int i = 0; i < n; ++i) {
      const double excess = std::max(0, counts[i] - 1);
      const double x = grid.values[i] * b.weighted_sum;
      if (x > 0.0) envelope = std::max(envelope, excess / x);
      num += excess * x;
      den += x * x;
    }
    lsq = den > 0.0 ? num / den : 0.0;
  };
  slopes(b.counts_plus, b.fitted_slope_plus, b.lsq_slope_plus);
  slopes(b.counts_minus, b.fitted_slope_minus, b.lsq_slope_minus);

  b.bound_holds = true;
  b.monotone = true;
  for (int i = 0; i < n; ++i) {
    const double x = grid.values[i] * b.weighted_sum;
    if (b.counts_plus[i] > 1.0 + b.fitted_slope_plus * x * (1 + 1e-12)) b.bound_holds = false;
    if (b.counts_minus[i] > 1.0 + b.fitted_slope_minus * x * (1 + 1e-12)) b.bound_holds = false;
    // the grid is decreasing in mu, so counts must not increase along it
    if (i > 0 && (b.counts_plus[i] > b.counts_plus[i - 1] || b.counts_minus[i] > b.counts_minus[i - 1]))
      b.monotone = false;
  }
  return b;
}

}  // namespace latbound
