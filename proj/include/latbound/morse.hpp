#pragma once

#include "latbound/green.hpp"

namespace latbound {

struct MorseConstant {
  double pi_j0_max = 0.0;
  double pi_j0_min = 0.0;
  double extraction_error = 0.0;  // larger of the two edge residuals
};

struct MorseEstimate {
  double value = 0.0;
  double residual = 0.0;
};

/// Edge coefficient of a(z) from the ladder delta_k = 1e-2 * 4^-k, k = 0..6.
/// d = 1: two Richardson levels on sqrt(delta) a(delta).
/// d = 2: Richardson on the increments (a_{k+1} - a_k) / ln 4.
/// Throws extraction error when the residual exceeds 1e-4.
MorseEstimate extract_morse_edge(const GreenEvaluator& g, Edge e);

MorseConstant extract_morse_constant(const GreenEvaluator& g);

}  // namespace latbound
