#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "latbound/types.hpp"

namespace latbound {

struct CoeffEntry {
  Site x{0, 0};
  std::complex<double> value;
};

/// Finite Hermitian table e(x) defining the free hopping operator.
class GeneratingCoefficients {
 public:
  /// Applies the Hermitian closure e(-x) = conj(e(x)) for missing partners and
  /// verifies it for present ones (tolerance 1e-12). Entries come out sorted.
  static GeneratingCoefficients from_entries(int dim, std::vector<CoeffEntry> entries);
  static GeneratingCoefficients laplacian(int dim);

  int dim() const noexcept { return dim_; }
  const std::vector<CoeffEntry>& entries() const noexcept { return entries_; }
  std::complex<double> at(const Site& x) const;

  /// Coefficients of -e; the symbol flips sign.
  GeneratingCoefficients negated() const;

  /// True when every value is real, hence e(x) = e(-x) and the symbol is even.
  bool is_real_symmetric() const noexcept;

  /// Largest |x_j| over the support.
  int range() const noexcept;

 private:
  int dim_ = 1;
  std::vector<CoeffEntry> entries_;
};

double symbol_eval(const GeneratingCoefficients& c, const Point& p);
/// Full complex sum, for realness diagnostics.
std::complex<double> symbol_eval_complex(const GeneratingCoefficients& c, const Point& p);
Eigen::Vector2d symbol_gradient(const GeneratingCoefficients& c, const Point& p);
Eigen::Matrix2d symbol_hessian(const GeneratingCoefficients& c, const Point& p);

struct ExtremaReport {
  int dim = 1;
  Point p_min{0, 0};
  Point p_max{0, 0};
  double e_min = 0;
  double e_max = 0;
  Eigen::Matrix2d hess_min = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d hess_max = Eigen::Matrix2d::Zero();
  bool nondegenerate = false;
  bool unique = false;
  int local_minima = 0;
  int local_maxima = 0;
};

/// Grid scan plus Newton polish. Throws degenerate_extremum when the Hessian
/// at the global minimum or maximum has |det| < 1e-10.
ExtremaReport find_extrema(const GeneratingCoefficients& c, int grid_n = 256);

}  // namespace latbound
