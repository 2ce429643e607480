#pragma once

#include <functional>
#include <vector>

#include "latbound/types.hpp"

namespace latbound::quad {

/// Vector-valued integrand: writes m values at q.
using PointFn = std::function<void(const Point& q, double* out)>;

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  double for_value(double v) const;
};

struct Result {
  std::vector<double> value;
  std::vector<double> error;
  long evaluations = 0;
  int rounds = 0;
  bool converged = false;
};

/// Axis-aligned cell; the second axis is ignored when dim == 1.
struct Cell {
  double lo[2] = {0, 0};
  double hi[2] = {0, 0};
};

/// Mean of f over (-pi,pi]^dim on the midpoint-shifted periodic grid with n
/// points per axis. Fixed chunking gives the same bits for any thread count.
std::vector<double> trapezoid(int dim, int n, int m, const PointFn& f, bool parallel);

/// Straight-loop reference for the kernel above (different summation order).
std::vector<double> trapezoid_serial(int dim, int n, int m, const PointFn& f);

/// Doubles n from base_n until successive values agree per component.
Result trapezoid_adaptive(int dim, int base_n, int max_refine, int m, const PointFn& f,
                          const Tolerance& tol, bool parallel);

/// Gauss-Kronrod 15/7 over the cells with QUADPACK error estimates; cells
/// whose error is too large are bisected for up to max_rounds rounds.
/// Returns plain (unnormalized) integrals.
Result gk_adaptive(int dim, std::vector<Cell> cells, int m, const PointFn& f,
                   const Tolerance& tol, int max_rounds, bool parallel);

/// Cells covering (-pi,pi]^dim: uniform far cells of width 2 pi / far with
/// the cells touching q = 0 graded geometrically (ratio 2) down to r_min.
std::vector<Cell> graded_torus_cells(int dim, double r_min, int far = 8);

/// Breakpoints 0 < r_min' < ... < h, halving from h down to at most r_min.
std::vector<double> geometric_breaks(double h, double r_min);

/// Mean of f over the torus using graded_torus_cells.
Result graded_torus(int dim, double r_min, int m, const PointFn& f, const Tolerance& tol,
                    int max_rounds, bool parallel);

/// T_alpha(omega) = int_0^r0 r^alpha / (r^2 + omega^2) dr by graded GK.
double t_alpha(double alpha, double omega, double r0);

/// Closed forms for alpha = 0 and alpha = 1.
double t_alpha_closed(int alpha, double omega, double r0);

}  // namespace latbound::quad
