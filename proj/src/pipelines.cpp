#include "latbound/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "latbound/asymptotics.hpp"
#include "latbound/birman.hpp"
#include "latbound/error.hpp"
#include "latbound/morse.hpp"
#include "latbound/oracle.hpp"
#include "latbound/parallel.hpp"

namespace latbound {

namespace {

std::vector<std::string> site_header(int dim) {
  return dim == 2 ? std::vector<std::string>{"x0", "x1"} : std::vector<std::string>{"x0"};
}

std::vector<Edge> edges_of(const ExperimentConfig& cfg) {
  if (cfg.edge == "top") return {Edge::top};
  if (cfg.edge == "bottom") return {Edge::bottom};
  return {Edge::top, Edge::bottom};
}

PipelineOutput extrema(const ExperimentConfig& cfg) {
  PipelineOutput out;
  const GreenEvaluator g(cfg.coeffs, cfg.quad);
  const ExtremaReport& r = g.extrema();
  const MorseConstant mc = extract_morse_constant(g);
  out.table.header = {"dim",          "p_min_0",      "p_min_1",       "e_min",  "p_max_0",
                      "p_max_1",      "e_max",        "det_hess_min",  "det_hess_max",
                      "nondegenerate", "unique",      "pi_j0_min",     "pi_j0_max"};
  out.table.add({fmt(r.dim), fmt(r.p_min[0]), fmt(r.p_min[1]), fmt(r.e_min), fmt(r.p_max[0]),
                 fmt(r.p_max[1]), fmt(r.e_max),
                 fmt(r.dim == 1 ? r.hess_min(0, 0) : r.hess_min.determinant()),
                 fmt(r.dim == 1 ? r.hess_max(0, 0) : r.hess_max.determinant()),
                 fmt(r.nondegenerate), fmt(r.unique), fmt(mc.pi_j0_min), fmt(mc.pi_j0_max)});
  out.summary.push_back("extraction_error=" + fmt(mc.extraction_error));
  return out;
}

PipelineOutput green(const ExperimentConfig& cfg) {
  if (cfg.z_values.empty()) raise(ErrorKind::config, "field 'z': green needs at least one z");
  PipelineOutput out;
  const GreenEvaluator g(cfg.coeffs, cfg.quad);
  out.table.header = {"z"};
  for (auto& h : site_header(cfg.dim)) out.table.header.push_back(h);
  out.table.header.push_back("value");
  out.table.header.push_back("est_error");
  const int nz = static_cast<int>(cfg.z_values.size());
  std::vector<std::vector<double>> vals(nz);
  std::vector<double> errs(nz);
  for (int i = 0; i < nz; ++i) {
    const EdgeDistance d = g.distance(cfg.z_values[i]);
    const ChartValues cv = g.chart_values(d, cfg.sites);
    vals[i] = g.green_batch(d, cfg.sites);
    errs[i] = cv.a_error + cv.d_error;
  }
  for (int i = 0; i < nz; ++i)
    for (std::size_t k = 0; k < cfg.sites.size(); ++k) {
      std::vector<std::string> row{fmt(cfg.z_values[i])};
      for (int j = 0; j < cfg.dim; ++j) row.push_back(fmt(cfg.sites[k][j]));
      row.push_back(fmt(vals[i][k]));
      row.push_back(fmt(errs[i]));
      out.table.add(std::move(row));
    }
  return out;
}

PipelineOutput bs_spectrum_table(const ExperimentConfig& cfg) {
  if (cfg.z_values.empty()) raise(ErrorKind::config, "field 'z': bs-spectrum needs at least one z");
  PipelineOutput out;
  const GreenEvaluator g(cfg.coeffs, cfg.quad);
  out.table.header = {"z"};
  bool first = true;
  for (double z : cfg.z_values) {
    const BSMatrix m = build_bs_matrix(g, cfg.potential, z);
    const BSSpectrum sp = bs_spectrum(m);
    const TraceReport tr = trace_identities(m, cfg.potential);
    const RankOneSplit rs = rank_one_split(m);
    if (first) {
      for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k)
        out.table.header.push_back("lambda_" + std::to_string(k));
      for (const char* h : {"tr_b", "tr_abs_b", "q1_norm"}) out.table.header.push_back(h);
      first = false;
    }
    std::vector<std::string> row{fmt(z)};
    for (double l : sp.eigenvalues) row.push_back(fmt(l));
    row.push_back(fmt(tr.tr_b));
    row.push_back(fmt(tr.tr_abs_b));
    row.push_back(fmt(rs.q1_norm));
    out.table.add(std::move(row));
  }
  return out;
}

PipelineOutput solve(const ExperimentConfig& cfg) {
  PipelineOutput out;
  const GreenEvaluator g(cfg.coeffs, cfg.quad);
  out.table.header = {"mu", "energy", "edge", "gap", "log_gap", "iterations"};
  const std::vector<Edge> edges = edges_of(cfg);
  const int n = static_cast<int>(cfg.mu_grid.values.size());
  const int ne = static_cast<int>(edges.size());
  std::vector<std::optional<EdgeSolution>> sols(static_cast<std::size_t>(n * ne));
  parallel_for(n * ne, [&](int k) {
    const double mu = cfg.mu_grid.values[k / ne];
    sols[k] = edges[k % ne] == Edge::top ? solve_top_eigenvalue(g, cfg.potential, mu)
                                         : solve_bottom_eigenvalue(g, cfg.potential, mu);
  });
  for (int k = 0; k < n * ne; ++k) {
    const double mu = cfg.mu_grid.values[k / ne];
    const char* e = to_string(edges[k % ne]);
    if (!sols[k]) {
      out.table.add({fmt(mu), "none", e, "none", "none", "0"});
      continue;
    }
    const EdgeSolution& s = *sols[k];
    out.table.add({fmt(mu), fmt(s.energy), e, fmt(s.gap), fmt(s.log_gap), fmt(s.iterations)});
  }
  return out;
}

PipelineOutput count(const ExperimentConfig& cfg) {
  PipelineOutput out;
  const GreenEvaluator g(cfg.coeffs, cfg.quad);
  out.table.header = {"mu", "n_plus_oracle", "n_minus_oracle", "n_plus_bs", "n_minus_bs", "max_abs_gap"};
  const ExtremaReport& ex = g.extrema();
  const double margin = cfg.oracle.margin > 0.0 ? cfg.oracle.margin : default_margin(cfg.dim, cfg.oracle.L);
  const int n = static_cast<int>(cfg.mu_grid.values.size());
  std::vector<std::vector<std::string>> rows(n);
  parallel_for(n, [&](int i) {
    const double mu = cfg.mu_grid.values[i];
    const TruncatedHamiltonian h = build_truncated(cfg.coeffs, cfg.potential, mu, cfg.oracle.L,
                                                   cfg.oracle.boundary);
    const OracleSpectrum sp = oracle_spectrum(h, ex.e_min, ex.e_max, margin);
    const int bp = count_bs_crossings(g, cfg.potential, mu, EdgeDistance::from_delta(Edge::top, margin));
    const int bm = count_bs_crossings(g, cfg.potential, mu, EdgeDistance::from_delta(Edge::bottom, margin));
    double worst = 0.0;
    for (double e : sp.eigenvalues_above) worst = std::max(worst, crossing_residual(g, cfg.potential, mu, e));
    for (double e : sp.eigenvalues_below) worst = std::max(worst, crossing_residual(g, cfg.potential, mu, e));
    rows[i] = {fmt(mu), fmt(sp.n_plus), fmt(sp.n_minus), fmt(bp), fmt(bm), fmt(worst)};
  });
  for (auto& r : rows) out.table.add(std::move(r));
  out.summary.push_back("margin=" + fmt(margin));
  return out;
}

PipelineOutput asymptotics(const ExperimentConfig& cfg) {
  PipelineOutput out;
  const GreenEvaluator g(cfg.coeffs, cfg.quad);
  out.table.header = {"mu", "gap", "extracted", "predicted", "rel_error", "edge", "log_gap"};
  const Regime r = detect_regime(cfg.potential);
  std::vector<Edge> edges;
  if (cfg.edge == "top") edges = {Edge::top};
  else if (cfg.edge == "bottom") edges = {Edge::bottom};
  else if (r == Regime::kappa0_pos) edges = {Edge::top};
  else if (r == Regime::kappa0_neg) edges = {Edge::bottom};
  else edges = {Edge::top, Edge::bottom};
  out.summary.push_back(std::string("regime=") + to_string(r));
  for (Edge e : edges) {
    const AbsorptionFit f = fit_absorption(g, cfg.potential, e, cfg.mu_grid);
    for (std::size_t i = 0; i < f.mu_grid.values.size(); ++i)
      out.table.add({fmt(f.mu_grid.values[i]), fmt(f.gaps[i]), fmt(f.extracted[i]),
                     fmt(f.predicted_constant), fmt(f.rel_errors[i]), to_string(e),
                     fmt(f.log_gaps[i])});
    const std::string p = std::string(to_string(e)) + ".";
    out.summary.push_back(p + "convergence_order=" + fmt(f.convergence_order));
    out.summary.push_back(p + "pi_j0=" + fmt(f.pi_j0));
    out.summary.push_back(p + "kappa=" + fmt(f.kappa));
    bool clear = std::all_of(f.second_branch_clear.begin(), f.second_branch_clear.end(),
                             [](bool b) { return b; });
    out.summary.push_back(p + "second_branch_clear=" + fmt(clear));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names{"extrema", "green", "bs-spectrum",
                                              "solve",   "count", "asymptotics"};
  return names;
}

PipelineOutput run_pipeline(const std::string& name, const ExperimentConfig& cfg) {
  PipelineOutput out;
  if (name == "extrema") out = extrema(cfg);
  else if (name == "green") out = green(cfg);
  else if (name == "bs-spectrum") out = bs_spectrum_table(cfg);
  else if (name == "solve") out = solve(cfg);
  else if (name == "count") out = count(cfg);
  else if (name == "asymptotics") out = asymptotics(cfg);
  else raise(ErrorKind::parameter, "unknown subcommand '" + name + "'");
  out.name = name;
  return out;
}

double crossing_residual(const GreenEvaluator& g, const LatticePotential& pot, double mu,
                         double energy) {
  const BSSpectrum sp = bs_spectrum(build_bs_matrix(g, pot, energy));
  double best = std::numeric_limits<double>::infinity();
  for (double l : sp.eigenvalues) best = std::min(best, std::abs(mu * l - 1.0));
  return best;
}

}  // namespace latbound
