#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "latbound/dispersion.hpp"
#include "latbound/potential.hpp"
#include "latbound/types.hpp"

namespace latbound {

struct QuadratureSpec {
  int base_n = 256;          // points per axis for the periodic rule
  int max_refine = 6;
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;    // floor relative to the value itself
  bool edge_treatment = true;
  double edge_threshold = 1e-3;  // below this distance use graded panels
  double anchor_delta = 1e-24;   // d = 2: below this use the log continuation
  bool parallel = true;

  static QuadratureSpec defaults(int dim);
  void validate() const;
};

/// Integrals in the chart centred on one band edge, with w(q) >= 0 the
/// distance of the symbol from the edge value and delta the spectral gap:
///   a = int dq / (delta + w),  d(x) = int (exp(-i x.q) - 1) dq / (delta + w).
struct ChartValues {
  double a = 0.0;
  std::vector<std::complex<double>> d;
  double a_error = 0.0;
  double d_error = 0.0;
  int regime = 0;  // 0 periodic grid, 1 graded panels, 2 log continuation
  long evaluations = 0;
};

class GreenEvaluator {
 public:
  explicit GreenEvaluator(GeneratingCoefficients coeffs, QuadratureSpec quad = {},
                          int grid_n = 256);

  const GeneratingCoefficients& coeffs() const noexcept { return coeffs_; }
  const ExtremaReport& extrema() const noexcept { return extrema_; }
  const QuadratureSpec& quad() const noexcept { return quad_; }
  int dim() const noexcept { return coeffs_.dim(); }

  double edge_value(Edge e) const noexcept { return e == Edge::top ? extrema_.e_max : extrema_.e_min; }
  Point edge_point(Edge e) const noexcept { return e == Edge::top ? extrema_.p_max : extrema_.p_min; }

  /// Edge and log distance of a real z outside the band; domain error inside.
  EdgeDistance distance(double z) const;
  double z_of(const EdgeDistance& d) const;

  ChartValues chart_values(const EdgeDistance& d, const std::vector<Site>& xs) const;

  /// a(z) for the z encoded by d (negative below the band).
  double a_at(const EdgeDistance& d) const;
  /// G(x; z) for each site; throws if an imaginary part survives.
  std::vector<double> green_batch(const EdgeDistance& d, const std::vector<Site>& xs) const;

  double a_of_z(double z) const;
  double green_x(const Site& x, double z) const;

  /// int |v(q)|^2 / w(q) dq in the chart of the given edge; needs sum v = 0.
  double kappa_edge(Edge e, const LatticePotential& pot) const;
  double kappa_top(const LatticePotential& pot) const { return kappa_edge(Edge::top, pot); }
  double kappa_bottom(const LatticePotential& pot) const { return kappa_edge(Edge::bottom, pot); }

  /// Leading edge coefficient from the Hessian: 1/sqrt(2|h|) or 1/(2 pi sqrt(det H)).
  double hessian_pi_j0(Edge e) const;

  /// Evaluator for -e. Its top chart is this evaluator's bottom chart.
  GreenEvaluator mirrored() const;

  struct Chart;

 private:
  GreenEvaluator() = default;
  const Chart& chart(Edge e) const { return e == Edge::top ? *top_ : *bottom_; }

  GeneratingCoefficients coeffs_;
  ExtremaReport extrema_;
  QuadratureSpec quad_;
  std::shared_ptr<Chart> top_;
  std::shared_ptr<Chart> bottom_;
};

}  // namespace latbound
