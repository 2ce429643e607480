#include "latbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "latbound/error.hpp"

namespace latbound {

const char* to_string(Boundary b) noexcept {
  return b == Boundary::dirichlet ? "dirichlet" : "periodic";
}

int TruncatedHamiltonian::index(const Site& x) const noexcept {
  const int n = side();
  return dim == 2 ? (x[0] + L) * n + (x[1] + L) : x[0] + L;
}

Point aligned_twist(int L, const Point& p, int dim) {
  const double n = 2.0 * L + 1.0;
  Point t{0.0, 0.0};
  for (int j = 0; j < dim; ++j) {
    t[j] = wrap_angle(n * p[j]);
    if (std::abs(t[j]) < 1e-9) t[j] = 0.0;
    if (std::abs(std::abs(t[j]) - pi) < 1e-9) t[j] = pi;
  }
  return t;
}

double default_margin(int dim, int L) {
  return dim == 1 ? std::max(1e-3, 10.0 / (double(L) * L)) : 1e-3;
}

TruncatedHamiltonian build_truncated(const GeneratingCoefficients& c, const LatticePotential& pot,
                                     double mu, int L, Boundary boundary, const Point& twist) {
  if (!c.is_real_symmetric())
    raise(ErrorKind::parameter, "truncated Hamiltonian needs real symmetric coefficients");
  if (pot.dim() != c.dim()) raise(ErrorKind::parameter, "potential and dispersion dimensions differ");
  if (L < 32) raise(ErrorKind::parameter, "box half-width L must be >= 32");
  if (!(mu >= 0.0)) raise(ErrorKind::parameter, "mu must be >= 0");
  if (2 * pot.range() > L) {
    std::ostringstream os;
    os << "potential support (range " << pot.range() << ") escapes [-L/2, L/2] with L = " << L;
    raise(ErrorKind::geometry, os.str());
  }
  const int dim = c.dim();
  const int n = 2 * L + 1;
  if (boundary == Boundary::periodic) {
    if (2 * c.range() >= n) raise(ErrorKind::geometry, "hopping range exceeds half the periodic box");
    for (int j = 0; j < dim; ++j)
      if (twist[j] != 0.0 && twist[j] != pi)
        raise(ErrorKind::parameter, "only twists 0 and pi keep the periodic box real");
  }

  TruncatedHamiltonian h;
  h.dim = dim;
  h.L = L;
  h.boundary = boundary;
  h.mu = mu;
  h.twist = twist;
  const int size = dim == 2 ? n * n : n;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(size) * c.entries().size());
  auto wrap = [&](int v, int& sign, int j) {
    if (v > L) {
      v -= n;
      if (twist[j] == pi) sign = -sign;
    } else if (v < -L) {
      v += n;
      if (twist[j] == pi) sign = -sign;
    }
    return v;
  };
  const int ny = dim == 2 ? n : 1;
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < ny; ++i1) {
      const Site x{i0 - L, dim == 2 ? i1 - L : 0};
      const int row = h.index(x);
      trip.emplace_back(row, row, 0.0);  // keep the diagonal in the pattern
      for (const auto& e : c.entries()) {
        Site y{x[0] + e.x[0], x[1] + e.x[1]};
        int sign = 1;
        bool inside = true;
        for (int j = 0; j < dim; ++j) {
          if (std::abs(y[j]) <= L) continue;
          if (boundary == Boundary::dirichlet) inside = false;
          else y[j] = wrap(y[j], sign, j);
        }
        if (!inside) continue;
        trip.emplace_back(row, h.index(y), sign * e.value.real());
      }
    }
  }
  for (const auto& e : pot.entries()) {
    const int k = h.index(e.x);
    trip.emplace_back(k, k, mu * e.v);
  }
  h.matrix.resize(size, size);
  h.matrix.setFromTriplets(trip.begin(), trip.end());
  h.matrix.makeCompressed();
  return h;
}

InertiaCounter::InertiaCounter(const TruncatedHamiltonian& h) : h_(h) {
  ldlt_.analyzePattern(h.matrix);
  upper_ = -1e300;
  lower_ = 1e300;
  // Gershgorin bounds
  Eigen::VectorXd radius = Eigen::VectorXd::Zero(h.size());
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(h.size());
  for (int k = 0; k < h.matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, k); it; ++it) {
      if (it.row() == it.col()) diag[it.row()] += it.value();
      else radius[it.row()] += std::abs(it.value());
    }
  for (int i = 0; i < h.size(); ++i) {
    upper_ = std::max(upper_, diag[i] + radius[i]);
    lower_ = std::min(lower_, diag[i] - radius[i]);
  }
}

int InertiaCounter::negatives(double t) {
  Eigen::SparseMatrix<double> a = h_.matrix;
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
      if (it.row() == it.col()) it.valueRef() -= t;
  ldlt_.factorize(a);
  if (ldlt_.info() != Eigen::Success) {
    std::ostringstream os;
    os << "sparse LDL^T failed at shift " << t;
    raise(ErrorKind::oracle, os.str());
  }
  const Eigen::VectorXd d = ldlt_.vectorD();
  int neg = 0;
  for (int i = 0; i < d.size(); ++i) {
    if (d[i] == 0.0 || !std::isfinite(d[i])) {
      std::ostringstream os;
      os << "singular pivot in LDL^T at shift " << t;
      raise(ErrorKind::oracle, os.str());
    }
    if (d[i] < 0.0) ++neg;
  }
  return neg;
}

int InertiaCounter::count_above(double t) { return h_.size() - negatives(t); }

int InertiaCounter::count_below(double t) { return negatives(t); }

OracleSpectrum oracle_spectrum(const TruncatedHamiltonian& h, double e_min, double e_max,
                               double margin, int max_eigs) {
  if (!(margin > 0.0)) raise(ErrorKind::parameter, "oracle margin must be > 0");
  InertiaCounter ic(h);
  OracleSpectrum out;
  out.margin = margin;
  const double t_hi = e_max + margin, t_lo = e_min - margin;
  const int above = ic.count_above(t_hi);
  const int below = ic.count_below(t_lo);
  if (above > max_eigs || below > max_eigs)
    raise(ErrorKind::oracle, "more outliers than the requested eigenvalue budget");

  auto tol = [](double a, double b) { return 1e-13 * std::max({1.0, std::abs(a), std::abs(b)}); };
  // k-th largest above t_hi: largest t with count_above(t) >= k
  for (int k = 1; k <= above; ++k) {
    double lo = t_hi, hi = ic.upper_bound() + 1e-12;
    if (!out.eigenvalues_above.empty()) hi = out.eigenvalues_above.back() + tol(hi, hi);
    while (hi - lo > tol(lo, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (ic.count_above(mid) >= k) lo = mid;
      else hi = mid;
    }
    out.eigenvalues_above.push_back(0.5 * (lo + hi));
  }
  for (int k = 1; k <= below; ++k) {
    double lo = ic.lower_bound() - 1e-12, hi = t_lo;
    if (!out.eigenvalues_below.empty()) lo = out.eigenvalues_below.back() - tol(lo, lo);
    while (hi - lo > tol(lo, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (ic.count_below(mid) >= k) hi = mid;
      else lo = mid;
    }
    out.eigenvalues_below.push_back(0.5 * (lo + hi));
  }
  out.n_plus = above;
  out.n_minus = below;
  return out;
}

std::vector<double> dense_spectrum(const TruncatedHamiltonian& h) {
  if (h.size() > 4096) raise(ErrorKind::oracle, "dense spectrum limited to 4096 sites");
  Eigen::MatrixXd m(h.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) raise(ErrorKind::oracle, "dense eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace latbound
