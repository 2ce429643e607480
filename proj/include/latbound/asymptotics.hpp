#pragma once

#include <optional>
#include <vector>

#include "latbound/birman.hpp"
#include "latbound/green.hpp"
#include "latbound/oracle.hpp"

namespace latbound {

struct MuGrid {
  std::vector<double> values;  // strictly decreasing, positive

  static MuGrid geometric(double start, double factor, int count);
  static MuGrid from_values(std::vector<double> v);
};

struct EdgeSolution {
  Edge edge = Edge::top;
  double mu = 0.0;
  double energy = 0.0;
  double gap = 0.0;      // may underflow to 0 in d = 2
  double log_gap = 0.0;  // always meaningful
  int iterations = 0;
};

/// Root of mu lambda(z) = 1 above the band, or nothing when mu lambda < 1 on
/// the whole search range. The unknown is sqrt(gap) in d = 1 and ln(gap) in
/// d = 2; the search stops at gap 1e-30 (d = 1) or ln(gap) = -1e8 (d = 2).
std::optional<EdgeSolution> solve_top_eigenvalue(const GreenEvaluator& g,
                                                 const LatticePotential& pot, double mu);

/// Bottom edge through the top solver applied to (-e, -v).
std::optional<EdgeSolution> solve_bottom_eigenvalue(const GreenEvaluator& g,
                                                    const LatticePotential& pot, double mu);

enum class Regime { kappa0_pos, kappa0_neg, kappa0_zero };
const char* to_string(Regime r) noexcept;
Regime detect_regime(const LatticePotential& pot);

struct AbsorptionFit {
  Edge edge = Edge::top;
  Regime regime = Regime::kappa0_pos;
  int dim = 1;
  MuGrid mu_grid;
  std::vector<double> gaps;
  std::vector<double> log_gaps;
  std::vector<double> extracted;
  std::vector<double> rel_errors;
  std::vector<bool> second_branch_clear;  // mu lambda_1 < 1 at the ladder floor
  double extracted_constant = 0.0;  // value at the smallest mu
  double predicted_constant = 0.0;
  double pi_j0 = 0.0;
  double kappa = 0.0;
  double convergence_order = 0.0;  // log-log slope of rel_errors over the last two rungs
};

/// pi_j0 defaults to the extrapolated edge coefficient.
AbsorptionFit fit_absorption(const GreenEvaluator& g, const LatticePotential& pot, Edge edge,
                             const MuGrid& grid, std::optional<double> pi_j0 = std::nullopt);

struct OracleParams {
  int L = 2000;
  Boundary boundary = Boundary::dirichlet;
  double margin = 0.0;  // 0 selects default_margin
};

struct BargmannCheck {
  MuGrid mu_grid;
  std::vector<int> counts_plus;
  std::vector<int> counts_minus;
  double weighted_sum = 0.0;
  double fitted_slope_plus = 0.0;   // smallest slope with counts <= 1 + slope mu W
  double fitted_slope_minus = 0.0;
  double lsq_slope_plus = 0.0;      // least squares of (count-1)+ against mu W
  double lsq_slope_minus = 0.0;
  bool bound_holds = false;
  bool monotone = false;
};

BargmannCheck bargmann_check(const GeneratingCoefficients& c, const LatticePotential& pot,
                             double gamma, const MuGrid& grid, const OracleParams& op,
                             bool permissive = false);

}  // namespace latbound
