#pragma once

#include <complex>
#include <vector>

#include "latbound/types.hpp"

namespace latbound {

struct PotentialEntry {
  Site x{0, 0};
  double v = 0.0;
};

/// Finitely supported real potential.
class LatticePotential {
 public:
  /// Rejects duplicate sites and an all-zero table. Entries come out sorted.
  static LatticePotential from_entries(int dim, std::vector<PotentialEntry> entries);

  int dim() const noexcept { return dim_; }
  const std::vector<PotentialEntry>& entries() const noexcept { return entries_; }
  LatticePotential negated() const;

  /// Sum of v, compensated.
  double kappa0() const noexcept;
  double abs_sum() const noexcept;
  int range() const noexcept;

 private:
  int dim_ = 1;
  std::vector<PotentialEntry> entries_;
};

struct DecayReport {
  double gamma = 0.5;
  double weighted_sum = 0.0;
  double abs_sum = 0.0;
  double kappa0 = 0.0;
  bool permissive_zero_weight = false;  // set when weighted_sum == 0 was allowed
};

/// With permissive = true a zero weighted sum is accepted and flagged.
DecayReport decay_report(const LatticePotential& pot, double gamma, bool permissive = false);

std::complex<double> potential_symbol(const LatticePotential& pot, const Point& p);

struct SignSplit {
  std::vector<Site> sites;  // zero sites kept with sign 0
  std::vector<int> signs;
  std::vector<double> sqrt_abs;
};

SignSplit sign_split(const LatticePotential& pot);

/// Neumaier compensated sum.
double compensated_sum(const std::vector<double>& xs) noexcept;

}  // namespace latbound
