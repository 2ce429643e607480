#include "latbound/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latbound/error.hpp"

namespace latbound {

namespace {

bool site_less(const Site& a, const Site& b) {
  return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
}

double det_dim(const Eigen::Matrix2d& h, int dim) {
  return dim == 1 ? h(0, 0) : h.determinant();
}

bool definite(const Eigen::Matrix2d& h, int dim, double sign) {
  if (dim == 1) return sign * h(0, 0) > 0;
  return sign * h(0, 0) > 0 && h.determinant() > 0;
}

struct Candidate {
  Point p;
  double value;
};

}  // namespace

GeneratingCoefficients GeneratingCoefficients::from_entries(int dim,
                                                            std::vector<CoeffEntry> in) {
  if (dim != 1 && dim != 2)
    raise(ErrorKind::unsupported_dimension, "dimension must be 1 or 2");
  if (in.empty()) raise(ErrorKind::invariant, "generating coefficients have empty support");
  for (auto& e : in) {
    if (dim == 1 && e.x[1] != 0)
      raise(ErrorKind::invariant, "second coordinate given for a 1-d site");
  }
  std::sort(in.begin(), in.end(),
            [](const CoeffEntry& a, const CoeffEntry& b) { return site_less(a.x, b.x); });
  for (std::size_t i = 1; i < in.size(); ++i)
    if (in[i].x == in[i - 1].x) raise(ErrorKind::invariant, "duplicate coefficient site");

  std::vector<CoeffEntry> out = in;
  auto find = [&](const Site& x) -> const CoeffEntry* {
    auto it = std::lower_bound(in.begin(), in.end(), x,
                               [](const CoeffEntry& e, const Site& s) { return site_less(e.x, s); });
    return (it != in.end() && it->x == x) ? &*it : nullptr;
  };
  for (const auto& e : in) {
    const Site mx = -e.x;
    const CoeffEntry* partner = find(mx);
    if (!partner) {
      out.push_back({mx, std::conj(e.value)});
    } else if (std::abs(partner->value - std::conj(e.value)) > 1e-12) {
      std::ostringstream os;
      os << "coefficients are not Hermitian at x=(" << e.x[0] << "," << e.x[1] << ")";
      raise(ErrorKind::invariant, os.str());
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CoeffEntry& a, const CoeffEntry& b) { return site_less(a.x, b.x); });
  // the origin must be real for Hermiticity; snap roundoff
  for (auto& e : out)
    if (e.x == Site{0, 0}) e.value = {e.value.real(), 0.0};

  GeneratingCoefficients g;
  g.dim_ = dim;
  g.entries_ = std::move(out);
  return g;
}

GeneratingCoefficients GeneratingCoefficients::laplacian(int dim) {
  if (dim != 1 && dim != 2)
    raise(ErrorKind::unsupported_dimension, "laplacian preset exists for d = 1, 2 only");
  std::vector<CoeffEntry> e;
  e.push_back({{0, 0}, double(dim)});
  for (int j = 0; j < dim; ++j) {
    Site s{0, 0};
    s[j] = 1;
    e.push_back({s, -0.5});
    e.push_back({-s, -0.5});
  }
  return from_entries(dim, std::move(e));
}

std::complex<double> GeneratingCoefficients::at(const Site& x) const {
  for (const auto& e : entries_)
    if (e.x == x) return e.value;
  return 0.0;
}

GeneratingCoefficients GeneratingCoefficients::negated() const {
  GeneratingCoefficients g = *this;
  for (auto& e : g.entries_) e.value = -e.value;
  return g;
}

bool GeneratingCoefficients::is_real_symmetric() const noexcept {
  for (const auto& e : entries_)
    if (e.value.imag() != 0.0) return false;
  return true;
}

int GeneratingCoefficients::range() const noexcept {
  int r = 0;
  for (const auto& e : entries_) r = std::max({r, std::abs(e.x[0]), std::abs(e.x[1])});
  return r;
}

double symbol_eval(const GeneratingCoefficients& c, const Point& p) {
  double s = 0.0;
  for (const auto& e : c.entries()) {
    const double t = dot(e.x, p);
    s += e.value.real() * std::cos(t) - e.value.imag() * std::sin(t);
  }
  return s;
}

std::complex<double> symbol_eval_complex(const GeneratingCoefficients& c, const Point& p) {
  std::complex<double> s = 0.0;
  for (const auto& e : c.entries()) s += e.value * std::polar(1.0, dot(e.x, p));
  return s;
}

Eigen::Vector2d symbol_gradient(const GeneratingCoefficients& c, const Point& p) {
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (const auto& e : c.entries()) {
    const double t = dot(e.x, p);
    // d/dp Re[e exp(i x.p)] = x * Re[i e exp(i x.p)]
    const double f = -e.value.real() * std::sin(t) - e.value.imag() * std::cos(t);
    g[0] += e.x[0] * f;
    g[1] += e.x[1] * f;
  }
  if (c.dim() == 1) g[1] = 0.0;
  return g;
}

Eigen::Matrix2d symbol_hessian(const GeneratingCoefficients& c, const Point& p) {
  Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
  for (const auto& e : c.entries()) {
    const double t = dot(e.x, p);
    const double f = -(e.value.real() * std::cos(t) - e.value.imag() * std::sin(t));
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) h(j, k) += e.x[j] * e.x[k] * f;
  }
  if (c.dim() == 1) h(0, 1) = h(1, 0) = h(1, 1) = 0.0;
  return h;
}

namespace {

Point newton_polish(const GeneratingCoefficients& c, Point p, double sign, double spacing) {
  const int dim = c.dim();
  const Point start = p;
  const double v0 = symbol_eval(c, p);
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector2d g = symbol_gradient(c, p);
    if (g.norm() < 1e-14) break;
    const Eigen::Matrix2d h = symbol_hessian(c, p);
    Eigen::Vector2d step;
    if (dim == 1) {
      if (h(0, 0) == 0.0) break;
      step = {g[0] / h(0, 0), 0.0};
    } else {
      if (std::abs(h.determinant()) < 1e-300) break;
      step = h.partialPivLu().solve(g);
    }
    for (int j = 0; j < dim; ++j) p[j] = wrap_angle(p[j] - step[j]);
  }
  // reject runaways and landings on the wrong kind of critical point
  bool moved_far = false;
  for (int j = 0; j < dim; ++j)
    if (std::abs(wrap_angle(p[j] - start[j])) > 2.0 * spacing) moved_far = true;
  if (moved_far || sign * (symbol_eval(c, p) - v0) > 1e-12) return start;
  for (int j = 0; j < dim; ++j) {
    if (std::abs(p[j]) < 1e-9) p[j] = 0.0;
    if (std::abs(std::abs(p[j]) - pi) < 1e-9) p[j] = pi;
  }
  return p;
}

std::vector<Candidate> dedupe(std::vector<Candidate> v, int dim) {
  std::vector<Candidate> out;
  for (const auto& c : v) {
    bool dup = false;
    for (const auto& o : out)
      if (same_torus_point(c.p, o.p, dim)) dup = true;
    if (!dup) out.push_back(c);
  }
  return out;
}

}  // namespace

ExtremaReport find_extrema(const GeneratingCoefficients& c, int grid_n) {
  if (grid_n < 16) raise(ErrorKind::parameter, "grid_n must be at least 16");
  const int dim = c.dim();
  const int n = grid_n;
  const int ny = dim == 2 ? n : 1;
  const double h = 2.0 * pi / n;
  auto coord = [&](int i) { return -pi + h * (i + 1); };  // ends at pi exactly

  std::vector<double> val(static_cast<std::size_t>(n) * ny);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < ny; ++j)
      val[i * ny + j] = symbol_eval(c, {coord(i), dim == 2 ? coord(j) : 0.0});

  std::vector<Candidate> mins, maxs;
  constexpr std::size_t cap = 64;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double v = val[i * ny + j];
      bool is_min = true, is_max = true;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = (dim == 2 ? -1 : 0); dj <= (dim == 2 ? 1 : 0); ++dj) {
          if (di == 0 && dj == 0) continue;
          const double u = val[((i + di + n) % n) * ny + (j + dj + ny) % ny];
          if (u < v) is_min = false;
          if (u > v) is_max = false;
        }
      }
      const Point p{coord(i), dim == 2 ? coord(j) : 0.0};
      if (is_min && mins.size() <= cap) mins.push_back({p, v});
      if (is_max && maxs.size() <= cap) maxs.push_back({p, v});
    }
  }
  const bool overflow = mins.size() > cap || maxs.size() > cap;

  for (auto& m : mins) {
    m.p = newton_polish(c, m.p, +1.0, h);
    m.value = symbol_eval(c, m.p);
  }
  for (auto& m : maxs) {
    m.p = newton_polish(c, m.p, -1.0, h);
    m.value = symbol_eval(c, m.p);
  }
  mins = dedupe(std::move(mins), dim);
  maxs = dedupe(std::move(maxs), dim);

  auto best_min = std::min_element(mins.begin(), mins.end(),
                                   [](auto& a, auto& b) { return a.value < b.value; });
  auto best_max = std::max_element(maxs.begin(), maxs.end(),
                                   [](auto& a, auto& b) { return a.value < b.value; });

  ExtremaReport r;
  r.dim = dim;
  r.p_min = best_min->p;
  r.p_max = best_max->p;
  r.e_min = best_min->value;
  r.e_max = best_max->value;
  r.hess_min = symbol_hessian(c, r.p_min);
  r.hess_max = symbol_hessian(c, r.p_max);
  r.local_minima = static_cast<int>(mins.size());
  r.local_maxima = static_cast<int>(maxs.size());
  r.unique = !overflow && mins.size() == 1 && maxs.size() == 1;

  const double dmin = det_dim(r.hess_min, dim), dmax = det_dim(r.hess_max, dim);
  if (std::abs(dmin) < 1e-10 || std::abs(dmax) < 1e-10) {
    std::ostringstream os;
    os << "Hessian determinant at the band " << (std::abs(dmin) < 1e-10 ? "bottom" : "top")
       << " is " << (std::abs(dmin) < 1e-10 ? dmin : dmax) << " (threshold 1e-10)";
    raise(ErrorKind::degenerate_extremum, os.str());
  }
  r.nondegenerate = definite(r.hess_min, dim, +1.0) && definite(r.hess_max, dim, -1.0);
  return r;
}

}  // namespace latbound
