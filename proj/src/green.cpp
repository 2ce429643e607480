#include "latbound/green.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "latbound/error.hpp"
#include "latbound/quadrature.hpp"

namespace latbound {

namespace {

struct HalfTerm {
  Site x;
  double cr2;  // 2 Re c_x
  double ci2;  // 2 Im c_x
};

/// exp(-i x.p) with exact signs at the symmetric points 0 and pi.
std::complex<double> phase(const Site& x, const Point& p) {
  bool exact = true;
  int parity = 0;
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

bool site_less(const Site& a, const Site& b) {
  return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
}

}  // namespace

struct GreenEvaluator::Chart {
  int dim = 1;
  Point p_star{0, 0};
  std::vector<HalfTerm> half;
  double lam_max = 0.0;
  double pi_j0 = 0.0;

  mutable std::mutex mu;
  mutable bool have_anchor_a = false;
  mutable double anchor_a = 0.0;
  mutable std::map<Site, std::complex<double>, bool (*)(const Site&, const Site&)> anchor_d{
      site_less};

  double w(const Point& q) const {
    double s = 0.0;
    for (const auto& t : half) {
      const double th = t.x[0] * q[0] + t.x[1] * q[1];
      const double sh = std::sin(0.5 * th);
      s += t.cr2 * 2.0 * sh * sh;
      if (t.ci2 != 0.0) s += t.ci2 * std::sin(th);
    }
    return s;
  }
};

QuadratureSpec QuadratureSpec::defaults(int dim) {
  QuadratureSpec q;
  q.base_n = dim == 2 ? 128 : 256;
  return q;
}

void QuadratureSpec::validate() const {
  if (base_n < 64) raise(ErrorKind::parameter, "quadrature base_n must be >= 64");
  if (!(abs_tol > 0.0)) raise(ErrorKind::parameter, "quadrature abs_tol must be > 0");
  if (!(rel_tol >= 0.0)) raise(ErrorKind::parameter, "quadrature rel_tol must be >= 0");
  if (max_refine < 0) raise(ErrorKind::parameter, "quadrature max_refine must be >= 0");
  if (!(edge_threshold > 0.0)) raise(ErrorKind::parameter, "edge_threshold must be > 0");
  if (!(anchor_delta > 0.0 && anchor_delta < edge_threshold))
    raise(ErrorKind::parameter, "anchor_delta must lie in (0, edge_threshold)");
}

namespace {

std::shared_ptr<GreenEvaluator::Chart> make_chart(const GeneratingCoefficients& c, const Point& p,
                                                  double s, const Eigen::Matrix2d& hess) {
  auto ch = std::make_shared<GreenEvaluator::Chart>();
  ch->dim = c.dim();
  ch->p_star = p;
  for (const auto& e : c.entries()) {
    const bool positive = e.x[0] > 0 || (e.x[0] == 0 && e.x[1] > 0);
    if (!positive) continue;
    const std::complex<double> cx = s * e.value * std::conj(phase(e.x, p));
    ch->half.push_back({e.x, 2.0 * cx.real(), 2.0 * cx.imag()});
  }
  if (c.dim() == 1) {
    ch->lam_max = std::abs(hess(0, 0));
    ch->pi_j0 = 1.0 / std::sqrt(2.0 * std::abs(hess(0, 0)));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
    ch->lam_max = es.eigenvalues().cwiseAbs().maxCoeff();
    ch->pi_j0 = 1.0 / (2.0 * pi * std::sqrt(std::abs(hess.determinant())));
  }
  return ch;
}

ChartValues integrate_chart(const GreenEvaluator::Chart& ch, const QuadratureSpec& qs,
                            double log_delta, const std::vector<Site>& xs, bool graded) {
  const double delta = std::exp(log_delta);
  const int nx = static_cast<int>(xs.size());
  const int m = 1 + 2 * nx;
  quad::PointFn f = [&](const Point& q, double* out) {
    const double inv = 1.0 / (delta + ch.w(q));
    out[0] = inv;
    for (int k = 0; k < nx; ++k) {
      const double th = xs[k][0] * q[0] + xs[k][1] * q[1];
      const double sh = std::sin(0.5 * th), chh = std::cos(0.5 * th);
      out[1 + 2 * k] = -2.0 * sh * sh * inv;
      out[2 + 2 * k] = -2.0 * sh * chh * inv;
    }
  };
  const quad::Tolerance tol{qs.abs_tol, qs.rel_tol};
  quad::Result r;
  if (graded) {
    const double r_min = 0.5 * std::sqrt(2.0 * delta / ch.lam_max);
    r = quad::graded_torus(ch.dim, r_min, m, f, tol, 2 * qs.max_refine, qs.parallel);
  } else {
    r = quad::trapezoid_adaptive(ch.dim, qs.base_n, qs.max_refine, m, f, tol, qs.parallel);
  }
  if (!r.converged) {
    std::ostringstream os;
    os << "green quadrature did not converge at ln(delta) = " << log_delta << " ("
       << (graded ? "graded panels" : "periodic grid") << ", estimated error "
       << *std::max_element(r.error.begin(), r.error.end()) << ")";
    throw AccuracyError(os.str(), r.value[0], r.error[0]);
  }
  ChartValues v;
  v.a = r.value[0];
  v.a_error = r.error[0];
  v.regime = graded ? 1 : 0;
  v.evaluations = r.evaluations;
  for (int k = 0; k < nx; ++k) {
    v.d.emplace_back(r.value[1 + 2 * k], r.value[2 + 2 * k]);
    v.d_error = std::max({v.d_error, r.error[1 + 2 * k], r.error[2 + 2 * k]});
  }
  return v;
}

}  // namespace

GreenEvaluator::GreenEvaluator(GeneratingCoefficients coeffs, QuadratureSpec quad, int grid_n)
    : coeffs_(std::move(coeffs)), quad_(quad) {
  quad_.validate();
  extrema_ = find_extrema(coeffs_, grid_n);
  if (!extrema_.unique)
    raise(ErrorKind::precondition, "symbol has more than one local minimum or maximum");
  if (!extrema_.nondegenerate)
    raise(ErrorKind::degenerate_extremum, "extremal Hessians are not definite");
  top_ = make_chart(coeffs_, extrema_.p_max, +1.0, extrema_.hess_max);
  bottom_ = make_chart(coeffs_, extrema_.p_min, -1.0, extrema_.hess_min);
}

GreenEvaluator GreenEvaluator::mirrored() const {
  GreenEvaluator m;
  m.coeffs_ = coeffs_.negated();
  m.quad_ = quad_;
  m.extrema_ = extrema_;
  m.extrema_.p_min = extrema_.p_max;
  m.extrema_.p_max = extrema_.p_min;
  m.extrema_.e_min = -extrema_.e_max;
  m.extrema_.e_max = -extrema_.e_min;
  m.extrema_.hess_min = -extrema_.hess_max;
  m.extrema_.hess_max = -extrema_.hess_min;
  std::swap(m.extrema_.local_minima, m.extrema_.local_maxima);
  m.top_ = bottom_;
  m.bottom_ = top_;
  return m;
}

EdgeDistance GreenEvaluator::distance(double z) const {
  if (!std::isfinite(z)) raise(ErrorKind::domain, "spectral parameter is not finite");
  if (z > extrema_.e_max) return EdgeDistance::from_delta(Edge::top, z - extrema_.e_max);
  if (z < extrema_.e_min) return EdgeDistance::from_delta(Edge::bottom, extrema_.e_min - z);
  std::ostringstream os;
  os.precision(17);
  os << "z = " << z << " lies in the band [" << extrema_.e_min << ", " << extrema_.e_max << "]";
  raise(ErrorKind::domain, os.str());
}

double GreenEvaluator::z_of(const EdgeDistance& d) const {
  return d.edge == Edge::top ? extrema_.e_max + d.delta() : extrema_.e_min - d.delta();
}

double GreenEvaluator::hessian_pi_j0(Edge e) const { return chart(e).pi_j0; }

ChartValues GreenEvaluator::chart_values(const EdgeDistance& d,
                                         const std::vector<Site>& xs_in) const {
  if (!std::isfinite(d.log_delta)) raise(ErrorKind::domain, "edge distance is not finite");
  const Chart& ch = chart(d.edge);
  const double delta = std::exp(d.log_delta);
  if (dim() == 1 && !(delta > 1e-300))
    raise(ErrorKind::domain, "edge distance below 1e-300 in d = 1");

  // distinct nonzero sites, sorted
  std::vector<Site> uniq;
  for (const auto& x : xs_in)
    if (x != Site{0, 0}) uniq.push_back(x);
  std::sort(uniq.begin(), uniq.end(), site_less);
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

  ChartValues v;
  const bool near = quad_.edge_treatment && delta < quad_.edge_threshold;
  if (near && dim() == 2 && delta < quad_.anchor_delta) {
    const double log_anchor = std::log(quad_.anchor_delta);
    std::lock_guard<std::mutex> lock(ch.mu);
    if (!ch.have_anchor_a) {
      ch.anchor_a = integrate_chart(ch, quad_, log_anchor, {}, true).a;
      ch.have_anchor_a = true;
    }
    for (const auto& x : uniq)
      if (!ch.anchor_d.count(x))
        ch.anchor_d[x] = integrate_chart(ch, quad_, log_anchor, {x}, true).d[0];
    v.a = ch.anchor_a + ch.pi_j0 * (log_anchor - d.log_delta);
    v.regime = 2;
    std::vector<std::complex<double>> du;
    for (const auto& x : uniq) du.push_back(ch.anchor_d[x]);
    v.d = std::move(du);
  } else {
    v = integrate_chart(ch, quad_, d.log_delta, uniq, near);
  }

  std::vector<std::complex<double>> out;
  for (const auto& x : xs_in) {
    if (x == Site{0, 0}) {
      out.emplace_back(0.0, 0.0);
      continue;
    }
    const auto it = std::lower_bound(uniq.begin(), uniq.end(), x, site_less);
    out.push_back(v.d[it - uniq.begin()]);
  }
  v.d = std::move(out);
  return v;
}

double GreenEvaluator::a_at(const EdgeDistance& d) const {
  const double s = d.edge == Edge::top ? 1.0 : -1.0;
  return s * chart_values(d, {}).a;
}

std::vector<double> GreenEvaluator::green_batch(const EdgeDistance& d,
                                                const std::vector<Site>& xs) const {
  const ChartValues v = chart_values(d, xs);
  const double s = d.edge == Edge::top ? 1.0 : -1.0;
  const Point& p = chart(d.edge).p_star;
  std::vector<double> g;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const std::complex<double> val = s * phase(xs[k], p) * (v.a + v.d[k]);
    if (std::abs(val.imag()) > 1e-12 * std::max(1.0, std::abs(v.a)))
      raise(ErrorKind::invariant,
            "lattice Green function has an imaginary part; coefficients are not real symmetric");
    g.push_back(val.real());
  }
  return g;
}

double GreenEvaluator::a_of_z(double z) const { return a_at(distance(z)); }

double GreenEvaluator::green_x(const Site& x, double z) const {
  return green_batch(distance(z), {x})[0];
}

double GreenEvaluator::kappa_edge(Edge e, const LatticePotential& pot) const {
  const double k0 = pot.kappa0();
  if (std::abs(k0) > 1e-12 * std::max(1.0, pot.abs_sum()))
    raise(ErrorKind::precondition, "kappa integral diverges unless sum v = 0");
  const Chart& ch = chart(e);
  const auto& ent = pot.entries();
  quad::PointFn f = [&](const Point& q, double* out) {
    double re = k0, im = 0.0;
    for (const auto& t : ent) {
      const double th = t.x[0] * q[0] + t.x[1] * q[1];
      const double sh = std::sin(0.5 * th);
      re += -2.0 * t.v * sh * sh;
      im += t.v * std::sin(th);
    }
    out[0] = (re * re + im * im) / ch.w(q);
  };
  const quad::Result r = quad::graded_torus(dim(), 1e-9, 1, f, {quad_.abs_tol, quad_.rel_tol},
                                            2 * quad_.max_refine, quad_.parallel);
  if (!r.converged)
    throw AccuracyError("kappa quadrature did not converge", r.value[0], r.error[0]);
  return r.value[0];
}

}  // namespace latbound
