#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latbound/config.hpp"
#include "latbound/csv.hpp"

namespace latbound {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // deterministic; no timings
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  /// Config rerun for the reproducibility criterion; a built-in one if empty.
  std::optional<ExperimentConfig> config;
  /// Criteria to run (1..14); all when empty.
  std::vector<int> only;
  /// Called after each criterion.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

/// id, name, passed, detail.
Table acceptance_table(const std::vector<CriterionResult>& results);

/// Built-in two-site d = 1 configuration used when none is supplied.
ExperimentConfig builtin_config();

}  // namespace latbound
