#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "latbound/dispersion.hpp"
#include "latbound/potential.hpp"

namespace latbound {

enum class Boundary { dirichlet, periodic };

const char* to_string(Boundary b) noexcept;

/// h_mu restricted to the box [-L, L]^d.
struct TruncatedHamiltonian {
  int dim = 1;
  int L = 0;
  Boundary boundary = Boundary::dirichlet;
  double mu = 0.0;
  Point twist{0, 0};  // Bloch phase per axis for periodic boxes
  Eigen::SparseMatrix<double> matrix;

  int side() const noexcept { return 2 * L + 1; }
  int size() const noexcept { return static_cast<int>(matrix.rows()); }
  int index(const Site& x) const noexcept;
};

struct OracleSpectrum {
  std::vector<double> eigenvalues_above;  // descending
  std::vector<double> eigenvalues_below;  // ascending
  int n_plus = 0;
  int n_minus = 0;
  double margin = 0.0;
};

/// Needs real symmetric coefficients, L >= 32 and supp v inside [-L/2, L/2]^d.
/// Periodic boxes with twist theta pick up exp(i theta_j) per wrap; only
/// theta_j in {0, pi} keep the matrix real.
TruncatedHamiltonian build_truncated(const GeneratingCoefficients& c, const LatticePotential& pot,
                                     double mu, int L, Boundary boundary,
                                     const Point& twist = {0.0, 0.0});

/// Twist placing p on the momentum grid of a periodic box of side 2L+1.
Point aligned_twist(int L, const Point& p, int dim);

double default_margin(int dim, int L);

/// Sylvester inertia of the shifted matrix, one sparse LDL^T per shift.
class InertiaCounter {
 public:
  explicit InertiaCounter(const TruncatedHamiltonian& h);
  int count_above(double t);  // eigenvalues > t
  int count_below(double t);  // eigenvalues < t
  double upper_bound() const noexcept { return upper_; }
  double lower_bound() const noexcept { return lower_; }

 private:
  int negatives(double t);  // negative pivots of H - t
  const TruncatedHamiltonian& h_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  double upper_ = 0.0, lower_ = 0.0;
};

/// Eigenvalues outside [e_min - margin, e_max + margin] by inertia bisection
/// to about 1e-13 relative accuracy.
OracleSpectrum oracle_spectrum(const TruncatedHamiltonian& h, double e_min, double e_max,
                               double margin, int max_eigs = 256);

/// Full dense spectrum, ascending; sizes up to 4096 only.
std::vector<double> dense_spectrum(const TruncatedHamiltonian& h);

}  // namespace latbound
