#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latbound/asymptotics.hpp"
#include "latbound/dispersion.hpp"
#include "latbound/green.hpp"
#include "latbound/potential.hpp"

namespace latbound {

/// Parsed and validated experiment configuration. `normalized` holds the
/// input with every default filled in; the digest is taken over it.
struct ExperimentConfig {
  int dim = 1;
  GeneratingCoefficients coeffs;
  LatticePotential potential;
  double gamma = 0.5;
  bool permissive_weight = false;
  MuGrid mu_grid;
  std::vector<double> z_values;
  std::vector<Site> sites;
  std::string edge = "auto";  // auto | top | bottom
  QuadratureSpec quad;
  OracleParams oracle;
  std::string output_dir = "latbound_out";
  bool write_manifest = true;
  std::uint64_t seed = 42;
  nlohmann::json normalized;

  std::string digest() const;
};

/// Throws Error(config) naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace latbound
