#include "latbound/birman.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "latbound/error.hpp"

namespace latbound {

namespace {

std::complex<double> edge_phase(const Site& x, const Point& p) {
  int parity = 0;
  bool exact = true;
  for (int j = 0; j < 2; ++j) {
    if (p[j] == 0.0) continue;
    if (p[j] == pi) {
      parity += x[j];
      continue;
    }
    exact = false;
  }
  if (exact) return (parity % 2 == 0) ? 1.0 : -1.0;
  return std::polar(1.0, -dot(x, p));
}

}  // namespace

BSMatrix build_bs_matrix(const GreenEvaluator& g, const LatticePotential& pot,
                         const EdgeDistance& d) {
  if (pot.dim() != g.dim()) raise(ErrorKind::parameter, "potential and dispersion dimensions differ");
  const SignSplit split = sign_split(pot);
  BSMatrix m;
  m.dist = d;
  m.z = g.z_of(d);
  for (std::size_t i = 0; i < split.sites.size(); ++i) {
    if (split.signs[i] == 0) continue;
    m.sites.push_back(split.sites[i]);
    m.signs.push_back(split.signs[i]);
    m.sqrt_abs.push_back(split.sqrt_abs[i]);
  }
  const int n = static_cast<int>(m.sites.size());
  std::vector<Site> diffs;
  diffs.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) diffs.push_back(m.sites[i] - m.sites[j]);

  const ChartValues cv = g.chart_values(d, diffs);
  const double s = d.edge == Edge::top ? 1.0 : -1.0;
  const Point p = g.edge_point(d.edge);
  m.a = s * cv.a;
  m.mat.resize(n, n);
  m.sym.resize(n, n);
  m.q_matrix.resize(n, n);
  m.q1.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      const std::complex<double> ph = edge_phase(diffs[k], p);
      const std::complex<double> full = ph * (cv.a + cv.d[k]);
      const std::complex<double> rest = ph * cv.d[k];
      if (std::abs(full.imag()) > 1e-12 * std::max(1.0, cv.a) || std::abs(ph.imag()) > 1e-12)
        raise(ErrorKind::invariant,
              "Birman-Schwinger kernel is complex; coefficients are not real symmetric");
      const double w = m.sqrt_abs[i] * m.sqrt_abs[j];
      m.q_matrix(i, j) = m.signs[i] * w * ph.real();
      m.q1(i, j) = s * m.signs[i] * w * rest.real();
      m.sym(i, j) = w * full.real();
    }
  }
  m.mat = m.a * m.q_matrix + m.q1;
  return m;
}

BSMatrix build_bs_matrix(const GreenEvaluator& g, const LatticePotential& pot, double z) {
  return build_bs_matrix(g, pot, g.distance(z));
}

BSSpectrum bs_spectrum(const BSMatrix& m) {
  BSSpectrum out;
  out.z = m.z;
  const int n = static_cast<int>(m.mat.rows());
  if (n == 0) return out;
  if (n == 1) {
    out.eigenvalues = {m.mat(0, 0)};
    return out;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m.mat, false);
  if (es.info() != Eigen::Success) raise(ErrorKind::realness, "eigensolver failed");
  const auto ev = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    out.max_imag_residual = std::max(out.max_imag_residual, std::abs(ev[i].imag()));
    out.eigenvalues.push_back(ev[i].real());
  }
  const double scale = std::max(1.0, m.mat.cwiseAbs().maxCoeff());
  if (out.max_imag_residual > 1e-8 * scale) {
    std::ostringstream os;
    os << "Birman-Schwinger eigenvalue with imaginary part " << out.max_imag_residual
       << " at z = " << m.z;
    raise(ErrorKind::realness, os.str());
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

double lambda_max(const GreenEvaluator& g, const LatticePotential& pot, const EdgeDistance& d) {
  const BSSpectrum sp = bs_spectrum(build_bs_matrix(g, pot, d));
  return sp.eigenvalues.empty() ? 0.0 : std::max(0.0, sp.eigenvalues.front());
}

double lambda_max(const GreenEvaluator& g, const LatticePotential& pot, double z) {
  return lambda_max(g, pot, g.distance(z));
}

RankOneSplit rank_one_split(const BSMatrix& m) {
  RankOneSplit r;
  r.q_matrix = m.q_matrix;
  r.q_eigenvalue = m.q_matrix.trace();
  if (m.q1.size() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.q1);
    r.q1_norm = svd.singularValues()(0);
  }
  return r;
}

RankOneSplit rank_one_split(const GreenEvaluator& g, const LatticePotential& pot, double z) {
  return rank_one_split(build_bs_matrix(g, pot, z));
}

TraceReport trace_identities(const BSMatrix& m, const LatticePotential& pot) {
  TraceReport t;
  t.tr_b = m.mat.trace();
  t.tr_abs_b = m.sym.trace();
  t.residual_b = std::abs(t.tr_b - m.a * pot.kappa0());
  t.residual_abs_b = std::abs(t.tr_abs_b - std::abs(m.a) * pot.abs_sum());
  const double bound = 1e-9 * (1.0 + std::abs(m.a) * pot.abs_sum());
  if (t.residual_b > bound || t.residual_abs_b > bound) {
    std::ostringstream os;
    os << "trace identity residuals " << t.residual_b << ", " << t.residual_abs_b
       << " exceed " << bound;
    raise(ErrorKind::identity, os.str());
  }
  return t;
}

int count_bs_crossings(const GreenEvaluator& g, const LatticePotential& pot, double mu,
                       const EdgeDistance& d) {
  if (!(mu > 0.0)) raise(ErrorKind::parameter, "mu must be > 0");
  const BSSpectrum sp = bs_spectrum(build_bs_matrix(g, pot, d));
  int c = 0;
  for (double l : sp.eigenvalues)
    if (l > 0.0 && mu * l >= 1.0) ++c;
  return c;
}

int count_bs_crossings(const GreenEvaluator& g, const LatticePotential& pot, double mu, double z) {
  return count_bs_crossings(g, pot, mu, g.distance(z));
}

EdgeCount count_bs_edge(const GreenEvaluator& g, const LatticePotential& pot, double mu, Edge e) {
  EdgeCount r;
  std::vector<double> ladder;
  if (g.dim() == 1) {
    r.floor_log_delta = std::log(1e-24);
    for (int k = 0; k <= 24; k += 2) ladder.push_back(-k * std::log(10.0));
  } else {
    r.floor_log_delta = -1e8;
    ladder.push_back(0.0);
    for (double t = 1.0; t < 1e8; t *= 2.0) ladder.push_back(-t);
    ladder.push_back(r.floor_log_delta);
  }
  for (double ld : ladder) {
    const int c = count_bs_crossings(g, pot, mu, EdgeDistance{e, ld});
    r.ladder_log_delta.push_back(ld);
    r.ladder_counts.push_back(c);
    r.count = std::max(r.count, c);
  }
  return r;
}

}  // namespace latbound
