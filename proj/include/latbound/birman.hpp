#pragma once

#include <vector>

#include <Eigen/Dense>

#include "latbound/green.hpp"
#include "latbound/potential.hpp"

namespace latbound {

/// Birman-Schwinger operator over the nonzero sites of the potential.
struct BSMatrix {
  EdgeDistance dist;
  double z = 0.0;
  std::vector<Site> sites;
  std::vector<int> signs;
  std::vector<double> sqrt_abs;
  Eigen::MatrixXd mat;  // S K
  Eigen::MatrixXd sym;  // K, positive semidefinite outside the band
  double a = 0.0;       // a(z), negative below the band
  Eigen::MatrixXd q_matrix;  // rank-one part at the edge point
  Eigen::MatrixXd q1;        // mat - a(z) Q, evaluated without cancellation
};

struct BSSpectrum {
  double z = 0.0;
  std::vector<double> eigenvalues;  // descending
  double max_imag_residual = 0.0;
};

struct RankOneSplit {
  Eigen::MatrixXd q_matrix;
  double q1_norm = 0.0;
  double q_eigenvalue = 0.0;  // the nonzero eigenvalue of Q (= kappa0)
};

struct TraceReport {
  double tr_b = 0.0;
  double tr_abs_b = 0.0;
  double residual_b = 0.0;
  double residual_abs_b = 0.0;
};

BSMatrix build_bs_matrix(const GreenEvaluator& g, const LatticePotential& pot,
                         const EdgeDistance& d);
BSMatrix build_bs_matrix(const GreenEvaluator& g, const LatticePotential& pot, double z);

/// Throws realness error when an imaginary part exceeds 1e-8 max(1, |mat|).
BSSpectrum bs_spectrum(const BSMatrix& m);

/// max(0, largest eigenvalue).
double lambda_max(const GreenEvaluator& g, const LatticePotential& pot, const EdgeDistance& d);
double lambda_max(const GreenEvaluator& g, const LatticePotential& pot, double z);

RankOneSplit rank_one_split(const BSMatrix& m);
RankOneSplit rank_one_split(const GreenEvaluator& g, const LatticePotential& pot, double z);

/// Throws identity error when a residual exceeds 1e-9 (1 + |a| sum|v|).
TraceReport trace_identities(const BSMatrix& m, const LatticePotential& pot);

/// #{k : mu lambda_k(z) >= 1}. Below the band the same matrix counts states
/// below z, since dim Ker(h_mu - z) = dim Ker(1 - mu b(z)) holds on both sides.
int count_bs_crossings(const GreenEvaluator& g, const LatticePotential& pot, double mu,
                       const EdgeDistance& d);
int count_bs_crossings(const GreenEvaluator& g, const LatticePotential& pot, double mu, double z);

struct EdgeCount {
  int count = 0;
  double floor_log_delta = 0.0;
  std::vector<double> ladder_log_delta;
  std::vector<int> ladder_counts;
};

/// Counts bound states beyond one edge: crossings of 1/mu along a geometric
/// ladder of edge distances from 1 down to a floor (d = 1: 1e-24,
/// d = 2: ln delta = -1e8). The count at the floor is the maximum.
EdgeCount count_bs_edge(const GreenEvaluator& g, const LatticePotential& pot, double mu, Edge e);

}  // namespace latbound
