#include <doctest.h>

#include "latbound/config.hpp"
#include "latbound/csv.hpp"
#include "latbound/error.hpp"
#include "latbound/pipelines.hpp"

using namespace latbound;
using nlohmann::json;

namespace {
json base() {
  return json::parse(R"({
    "dispersion": {"preset": "laplacian", "dim": 1},
    "potential": [{"x": [0], "v": 1.0}],
    "gamma": 0.5,
    "mu_grid": {"values": [1.0]}
  })");
}

std::string config_error(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("missing gamma names the field") {
  json j = base();
  j.erase("gamma");
  CHECK(config_error(j).find("'gamma'") != std::string::npos);
}

TEST_CASE("unknown keys are rejected with their path") {
  json j = base();
  j["quadrature"] = {{"base_n", 64}, {"nonsense", 1}};
  CHECK(config_error(j).find("quadrature.nonsense") != std::string::npos);
  json k = base();
  k["extra"] = 1;
  CHECK(config_error(k).find("'extra'") != std::string::npos);
}

TEST_CASE("bad site arity is reported by index") {
  json j = base();
  j["potential"][0]["x"] = {0, 1};
  CHECK(config_error(j).find("potential[0].x") != std::string::npos);
}

TEST_CASE("normalized echo re-validates to the same digest") {
  const ExperimentConfig a = parse_config(base());
  const ExperimentConfig b = parse_config(a.normalized);
  CHECK(a.digest() == b.digest());
  CHECK(a.digest().size() == 16);
  CHECK(a.seed == 42);
  json j = base();
  j["gamma"] = 0.25;
  CHECK(parse_config(j).digest() != a.digest());
}

TEST_CASE("FNV-1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("csv formatting") {
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(fmt(2.0) == "2");
  Table t;
  t.header = {"a", "b"};
  t.add({"1", "x,y"});
  CHECK(t.to_csv() == "a,b\n1,\"x,y\"\n");
  CHECK_THROWS_AS(t.add({"1"}), Error);
}

TEST_CASE("solve pipeline row for the single site at mu = 1") {
  ExperimentConfig cfg = parse_config(base());
  cfg.edge = "top";
  const PipelineOutput out = run_pipeline("solve", cfg);
  REQUIRE(out.table.rows.size() == 1);
  CHECK(out.table.rows[0][0] == "1");
  CHECK(std::stod(out.table.rows[0][1]) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("extrema pipeline for the square lattice") {
  json j = base();
  j["dispersion"]["dim"] = 2;
  j["potential"][0]["x"] = {0, 0};
  const PipelineOutput out = run_pipeline("extrema", parse_config(j));
  CHECK(out.table.rows[0][4] == fmt(pi));
  CHECK(out.table.rows[0][5] == fmt(pi));
  CHECK(out.table.rows[0][6] == "4");
}
