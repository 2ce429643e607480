#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "latbound/acceptance.hpp"
#include "latbound/config.hpp"
#include "latbound/error.hpp"
#include "latbound/pipelines.hpp"

namespace fs = std::filesystem;
using namespace latbound;

namespace {

constexpr int kManifestFormat = 1;

fs::path output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("LATBOUND_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

void write_outputs(const ExperimentConfig& cfg, const std::string& name, const Table& table,
                   const std::vector<std::string>& summary, double seconds, nlohmann::json extra = {}) {
  const fs::path dir = output_dir(cfg);
  fs::create_directories(dir);
  const fs::path csv = dir / (name + ".csv");
  write_file(csv, table.to_csv());
  if (!cfg.write_manifest) return;
  nlohmann::json m;
  m["format_version"] = kManifestFormat;
  m["csv_format"] = "header row, %.17g floats";
  m["tool_version"] = LATBOUND_VERSION;
  m["subcommand"] = name;
  m["config_digest"] = cfg.digest();
  m["inputs"] = cfg.normalized;
  m["csv"] = csv.filename().string();
  m["rows"] = table.rows.size();
  m["summary"] = summary;
  m["wall_time_s"] = seconds;
  m["threads"] = omp_get_max_threads();
  if (!extra.is_null()) m["extra"] = extra;
  write_file(dir / (name + ".manifest.json"), m.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of discrete Schroedinger operators near band edges"};
  app.set_version_flag("--version", LATBOUND_VERSION);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on OpenMP threads")->check(CLI::NonNegativeNumber);

  std::string config_path;
  for (const auto& name : pipeline_names()) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " pipeline");
    sub->add_option("config", config_path, "JSON config")->required();
  }
  auto* verify = app.add_subcommand("verify-all", "Run the acceptance suite");
  verify->add_option("config", config_path, "JSON config (optional)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (threads > 0) omp_set_num_threads(threads);
  const std::string name = app.get_subcommands().front()->get_name();

  ExperimentConfig cfg;
  try {
    cfg = config_path.empty() ? builtin_config() : load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  if (name == "verify-all") {
    AcceptanceOptions opt;
    opt.seed = cfg.seed;
    opt.config = cfg;
    opt.on_result = [](const CriterionResult& r) {
      std::cout << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail
                << " (" << r.seconds << " s)" << std::endl;
    };
    std::vector<CriterionResult> res;
    try {
      res = run_acceptance(opt);
    } catch (const std::exception& e) {
      std::cerr << "acceptance stage failed: " << e.what() << "\n";
      return 3;
    }
    nlohmann::json timings = nlohmann::json::object();
    std::vector<std::string> failed;
    for (const auto& r : res) {
      timings[std::to_string(r.id)] = r.seconds;
      if (!r.passed) failed.push_back(std::to_string(r.id));
    }
    try {
      write_outputs(cfg, name, acceptance_table(res), {}, elapsed(), {{"criterion_seconds", timings}});
    } catch (const std::exception& e) {
      std::cerr << "output failed: " << e.what() << "\n";
      return 3;
    }
    if (!failed.empty()) {
      std::cerr << "failed criteria:";
      for (const auto& f : failed) std::cerr << " " << f;
      std::cerr << "\n";
      return 1;
    }
    return 0;
  }

  try {
    const PipelineOutput out = run_pipeline(name, cfg);
    std::cout << out.table.to_csv();
    for (const auto& s : out.summary) std::cout << "# " << s << "\n";
    write_outputs(cfg, name, out.table, out.summary, elapsed());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config || e.kind() == ErrorKind::parameter) {
      std::cerr << "invalid input: " << e.what() << "\n";
      return 2;
    }
    std::cerr << name << " failed in stage '" << to_string(e.kind()) << "': " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << name << " failed: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
