#include "latbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "latbound/error.hpp"

namespace latbound::quad {

namespace {

// QUADPACK qk15 abscissae and weights on [-1, 1], ordered left to right.
struct GK15 {
  double x[15];
  double wk[15];
  double wg[15];  // zero at Kronrod-only nodes
  GK15() {
    const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
    const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    const double wgs[8] = {0.0, 0.129484966168869693270611432679082,
                           0.0, 0.279705391489276667901467771423780,
                           0.0, 0.381830050505118944950369775488975,
                           0.0, 0.417959183673469387755102040816327};
    for (int i = 0; i < 8; ++i) {
      x[i] = -xgk[i];
      wk[i] = wgk[i];
      wg[i] = wgs[i];
      x[14 - i] = xgk[i];
      wk[14 - i] = wgk[i];
      wg[14 - i] = wgs[i];
    }
  }
};

const GK15& rule() {
  static const GK15 r;
  return r;
}

struct CellResult {
  std::vector<double> value;
  std::vector<double> error;
};

double quadpack_error(double diff, double resabs, double resasc) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  double err = std::abs(diff);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return err;
}

CellResult eval_cell(int dim, const Cell& c, int m, const PointFn& f) {
  const GK15& g = rule();
  const int ny = dim == 2 ? 15 : 1;
  const double cx = 0.5 * (c.lo[0] + c.hi[0]), hx = 0.5 * (c.hi[0] - c.lo[0]);
  const double cy = 0.5 * (c.lo[1] + c.hi[1]), hy = dim == 2 ? 0.5 * (c.hi[1] - c.lo[1]) : 1.0;
  std::vector<double> vals(static_cast<std::size_t>(15) * ny * m);
  std::vector<double> wk(15 * ny), wg(15 * ny);
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < ny; ++j) {
      Point q{cx + hx * g.x[i], dim == 2 ? cy + hy * g.x[j] : 0.0};
      f(q, &vals[(i * ny + j) * m]);
      wk[i * ny + j] = dim == 2 ? g.wk[i] * g.wk[j] : g.wk[i];
      wg[i * ny + j] = dim == 2 ? g.wg[i] * g.wg[j] : g.wg[i];
    }
  }
  const double scale = hx * hy;
  const double area = dim == 2 ? 4.0 : 2.0;  // reference-cell measure
  CellResult r;
  r.value.assign(m, 0.0);
  r.error.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    double rk = 0.0, rg = 0.0, rabs = 0.0;
    for (int p = 0; p < 15 * ny; ++p) {
      const double v = vals[p * m + k];
      rk += wk[p] * v;
      rg += wg[p] * v;
      rabs += wk[p] * std::abs(v);
    }
    const double mean = rk / area;
    double rasc = 0.0;
    for (int p = 0; p < 15 * ny; ++p) rasc += wk[p] * std::abs(vals[p * m + k] - mean);
    r.value[k] = rk * scale;
    r.error[k] = quadpack_error((rk - rg) * scale, rabs * scale, rasc * scale);
  }
  return r;
}

std::vector<Cell> split(int dim, const Cell& c) {
  std::vector<Cell> out;
  const double mx = 0.5 * (c.lo[0] + c.hi[0]);
  if (dim == 1) {
    Cell a = c, b = c;
    a.hi[0] = mx;
    b.lo[0] = mx;
    return {a, b};
  }
  const double my = 0.5 * (c.lo[1] + c.hi[1]);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Cell s;
      s.lo[0] = i ? mx : c.lo[0];
      s.hi[0] = i ? c.hi[0] : mx;
      s.lo[1] = j ? my : c.lo[1];
      s.hi[1] = j ? c.hi[1] : my;
      out.push_back(s);
    }
  }
  return out;
}

inline double grid_coord(int k, int n) { return -pi + (k + 0.5) * (2.0 * pi / n); }

}  // namespace

double Tolerance::for_value(double v) const { return std::max(abs_tol, rel_tol * std::abs(v)); }

std::vector<double> trapezoid(int dim, int n, int m, const PointFn& f, bool parallel) {
  // chunk = one row in 2-d, 256 points in 1-d
  const int chunk = dim == 2 ? n : 256;
  const long total = dim == 2 ? long(n) * n : n;
  const int nchunks = static_cast<int>((total + chunk - 1) / chunk);
  std::vector<double> partial(static_cast<std::size_t>(nchunks) * m, 0.0);

#pragma omp parallel for schedule(static) if (parallel)
  for (int c = 0; c < nchunks; ++c) {
    std::vector<double> buf(m);
    double* acc = &partial[static_cast<std::size_t>(c) * m];
    const long begin = long(c) * chunk, end = std::min(total, begin + chunk);
    for (long idx = begin; idx < end; ++idx) {
      Point q{0.0, 0.0};
      if (dim == 2) {
        q[0] = grid_coord(static_cast<int>(idx / n), n);
        q[1] = grid_coord(static_cast<int>(idx % n), n);
      } else {
        q[0] = grid_coord(static_cast<int>(idx), n);
      }
      f(q, buf.data());
      for (int k = 0; k < m; ++k) acc[k] += buf[k];
    }
  }

  std::vector<double> out(m, 0.0);
  for (int c = 0; c < nchunks; ++c)
    for (int k = 0; k < m; ++k) out[k] += partial[static_cast<std::size_t>(c) * m + k];
  for (auto& v : out) v /= static_cast<double>(total);
  return out;
}

std::vector<double> trapezoid_serial(int dim, int n, int m, const PointFn& f) {
  std::vector<double> sum(m, 0.0), buf(m);
  const int ny = dim == 2 ? n : 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < ny; ++j) {
      f({grid_coord(i, n), dim == 2 ? grid_coord(j, n) : 0.0}, buf.data());
      for (int k = 0; k < m; ++k) sum[k] += buf[k];
    }
  }
  const double total = dim == 2 ? double(n) * n : double(n);
  for (auto& v : sum) v /= total;
  return sum;
}

Result trapezoid_adaptive(int dim, int base_n, int max_refine, int m, const PointFn& f,
                          const Tolerance& tol, bool parallel) {
  Result r;
  int n = base_n;
  std::vector<double> prev = trapezoid(dim, n, m, f, parallel);
  r.evaluations = dim == 2 ? long(n) * n : n;
  for (int round = 1; round <= max_refine; ++round) {
    n *= 2;
    std::vector<double> cur = trapezoid(dim, n, m, f, parallel);
    r.evaluations += dim == 2 ? long(n) * n : n;
    r.rounds = round;
    r.error.assign(m, 0.0);
    bool ok = true;
    for (int k = 0; k < m; ++k) {
      r.error[k] = std::abs(cur[k] - prev[k]);
      if (r.error[k] > tol.for_value(cur[k])) ok = false;
    }
    r.value = cur;
    if (ok) {
      r.converged = true;
      return r;
    }
    prev = std::move(cur);
  }
  return r;
}

Result gk_adaptive(int dim, std::vector<Cell> cells, int m, const PointFn& f,
                   const Tolerance& tol, int max_rounds, bool parallel) {
  const long per_cell = dim == 2 ? 225 : 15;
  std::vector<CellResult> res(cells.size());
  std::vector<std::size_t> todo(cells.size());
  std::iota(todo.begin(), todo.end(), 0);
  Result out;

  for (int round = 0;; ++round) {
    const long nt = static_cast<long>(todo.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (long t = 0; t < nt; ++t) res[todo[t]] = eval_cell(dim, cells[todo[t]], m, f);
    out.evaluations += nt * per_cell;
    out.rounds = round;

    out.value.assign(m, 0.0);
    out.error.assign(m, 0.0);
    for (const auto& c : res)
      for (int k = 0; k < m; ++k) {
        out.value[k] += c.value[k];
        out.error[k] += c.error[k];
      }
    std::vector<char> mark(cells.size(), 0);
    bool ok = true;
    for (int k = 0; k < m; ++k) {
      const double target = tol.for_value(out.value[k]);
      if (out.error[k] <= target) continue;
      ok = false;
      std::vector<std::size_t> order(cells.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return res[a].error[k] > res[b].error[k];
      });
      double remaining = out.error[k];
      for (std::size_t idx : order) {
        if (remaining <= 0.5 * target) break;
        mark[idx] = 1;
        remaining -= res[idx].error[k];
      }
    }
    if (ok) {
      out.converged = true;
      return out;
    }
    if (round >= max_rounds) return out;

    std::vector<Cell> next_cells;
    std::vector<CellResult> next_res;
    todo.clear();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!mark[i]) {
        next_cells.push_back(cells[i]);
        next_res.push_back(std::move(res[i]));
        continue;
      }
      for (const Cell& s : split(dim, cells[i])) {
        todo.push_back(next_cells.size());
        next_cells.push_back(s);
        next_res.emplace_back();
      }
    }
    cells = std::move(next_cells);
    res = std::move(next_res);
  }
}

std::vector<double> geometric_breaks(double h, double r_min) {
  int levels = 1;
  if (r_min > 0.0 && r_min < h) levels = std::max(1, int(std::ceil(std::log2(h / r_min))));
  levels = std::min(levels, 1000);
  std::vector<double> b;
  b.push_back(0.0);
  for (int k = levels; k >= 1; --k) b.push_back(std::ldexp(h, -k));
  b.push_back(h);
  return b;
}

std::vector<Cell> graded_torus_cells(int dim, double r_min, int far) {
  const double w = 2.0 * pi / far;
  const int half = far / 2;
  std::vector<Cell> cells;
  if (dim == 1) {
    const std::vector<double> g = geometric_breaks(w, r_min);
    for (int k = 0; k < half - 1; ++k) {
      Cell c;
      c.lo[0] = -pi + k * w;
      c.hi[0] = -pi + (k + 1) * w;
      cells.push_back(c);
    }
    for (std::size_t i = g.size() - 1; i >= 1; --i) {
      Cell c;
      c.lo[0] = -g[i];
      c.hi[0] = -g[i - 1];
      cells.push_back(c);
    }
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      Cell c;
      c.lo[0] = g[i];
      c.hi[0] = g[i + 1];
      cells.push_back(c);
    }
    for (int k = half + 1; k < far; ++k) {
      Cell c;
      c.lo[0] = -pi + k * w;
      c.hi[0] = -pi + (k + 1) * w;
      cells.push_back(c);
    }
    return cells;
  }

  for (int i = 0; i < far; ++i) {
    for (int j = 0; j < far; ++j) {
      const bool touches = (i == half - 1 || i == half) && (j == half - 1 || j == half);
      if (touches) continue;
      Cell c;
      c.lo[0] = -pi + i * w;
      c.hi[0] = -pi + (i + 1) * w;
      c.lo[1] = -pi + j * w;
      c.hi[1] = -pi + (j + 1) * w;
      cells.push_back(c);
    }
  }
  auto place = [&](double a0, double a1, double b0, double b1, int sx, int sy) {
    Cell c;
    c.lo[0] = sx > 0 ? a0 : -a1;
    c.hi[0] = sx > 0 ? a1 : -a0;
    c.lo[1] = sy > 0 ? b0 : -b1;
    c.hi[1] = sy > 0 ? b1 : -b0;
    cells.push_back(c);
  };
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      double s = w;
      int levels = 0;
      while (0.5 * s > r_min && levels < 1000) {
        const double t = 0.5 * s;
        place(t, s, 0.0, t, sx, sy);
        place(0.0, t, t, s, sx, sy);
        place(t, s, t, s, sx, sy);
        s = t;
        ++levels;
      }
      place(0.0, s, 0.0, s, sx, sy);
    }
  }
  return cells;
}

Result graded_torus(int dim, double r_min, int m, const PointFn& f, const Tolerance& tol,
                    int max_rounds, bool parallel) {
  const double norm = dim == 2 ? 4.0 * pi * pi : 2.0 * pi;
  Tolerance t = tol;
  t.abs_tol *= norm;
  Result r = gk_adaptive(dim, graded_torus_cells(dim, r_min), m, f, t, max_rounds, parallel);
  for (auto& v : r.value) v /= norm;
  for (auto& e : r.error) e /= norm;
  return r;
}

double t_alpha_closed(int alpha, double omega, double r0) {
  if (alpha == 0) return std::atan(r0 / omega) / omega;
  if (alpha == 1) return 0.5 * std::log1p((r0 / omega) * (r0 / omega));
  raise(ErrorKind::parameter, "closed form exists for alpha = 0, 1 only");
}

double t_alpha(double alpha, double omega, double r0) {
  if (!(omega > 0.0) || !std::isfinite(omega)) raise(ErrorKind::domain, "omega must be > 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) raise(ErrorKind::parameter, "alpha must be >= 0");
  if (!(r0 > 0.0 && r0 <= 1.0)) raise(ErrorKind::parameter, "r0 must lie in (0,1]");
  const std::vector<double> b = geometric_breaks(r0, std::min(r0, omega) * 1e-12);
  std::vector<Cell> cells;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    Cell c;
    c.lo[0] = b[i];
    c.hi[0] = b[i + 1];
    cells.push_back(c);
  }
  const double w2 = omega * omega;
  const bool integer_alpha = alpha == std::floor(alpha) && alpha <= 8;
  const int ia = static_cast<int>(alpha);
  PointFn f = [&](const Point& q, double* out) {
    const double r = q[0];
    double num = 1.0;
    if (integer_alpha)
      for (int k = 0; k < ia; ++k) num *= r;
    else
      num = std::pow(r, alpha);
    out[0] = num / (r * r + w2);
  };
  Result res = gk_adaptive(1, std::move(cells), 1, f, {0.0, 5e-14}, 12, false);
  if (!res.converged)
    throw AccuracyError("t_alpha did not reach 5e-14 relative accuracy", res.value[0],
                        res.error[0]);
  return res.value[0];
}

}  // namespace latbound::quad
