// One line per criterion; exit 1 if any fails.
#include <iostream>

#include <CLI11.hpp>

#include "latbound/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  latbound::AcceptanceOptions opt;
  std::string config;
  app.add_option("--only", opt.only, "criterion ids");
  app.add_option("--seed", opt.seed);
  app.add_option("--config", config, "config for the reproducibility check");
  CLI11_PARSE(app, argc, argv);
  if (!config.empty()) opt.config = latbound::load_config(config);
  opt.on_result = [](const latbound::CriterionResult& r) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name
              << "): " << r.detail << " [" << r.seconds << " s]" << std::endl;
  };
  bool ok = true;
  for (const auto& r : latbound::run_acceptance(opt)) ok = ok && r.passed;
  return ok ? 0 : 1;
}
