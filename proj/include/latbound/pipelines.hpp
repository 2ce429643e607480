#pragma once

#include <string>
#include <vector>

#include "latbound/config.hpp"
#include "latbound/csv.hpp"

namespace latbound {

struct PipelineOutput {
  std::string name;
  Table table;
  std::vector<std::string> summary;  // key=value lines, also echoed to the manifest
};

/// Subcommands with a CSV table: extrema, green, bs-spectrum, solve, count,
/// asymptotics. Unknown names raise a parameter error.
PipelineOutput run_pipeline(const std::string& name, const ExperimentConfig& cfg);

const std::vector<std::string>& pipeline_names();

/// min_k |mu lambda_k(E) - 1| over the Birman-Schwinger eigenvalues at E.
double crossing_residual(const GreenEvaluator& g, const LatticePotential& pot, double mu,
                         double energy);

}  // namespace latbound
