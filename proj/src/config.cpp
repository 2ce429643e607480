#include "latbound/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "latbound/error.hpp"

namespace latbound {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  raise(ErrorKind::config, "field '" + field + "': " + msg);
}

void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) fail(where.empty() ? k : where + "." + k, "unknown key");
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) fail(path, "missing required field");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

Site get_site(const json& v, int dim, const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    fail(path, "expected an array of " + std::to_string(dim) + " integers");
  Site s{0, 0};
  for (int j = 0; j < dim; ++j) s[j] = get_int(v[j], path + "[" + std::to_string(j) + "]");
  return s;
}

json site_json(const Site& s, int dim) {
  json a = json::array();
  for (int j = 0; j < dim; ++j) a.push_back(s[j]);
  return a;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string ExperimentConfig::digest() const { return fnv1a_hex(normalized.dump()); }

ExperimentConfig parse_config(const json& j) {
  only_keys(j, "", {"dispersion", "potential", "gamma", "permissive_weight", "mu_grid", "z",
                    "sites", "edge", "quadrature", "oracle", "outputs", "seed"});
  ExperimentConfig cfg;
  json norm;

  // dispersion
  if (!j.contains("dispersion")) fail("dispersion", "missing required field");
  const json& dj = j.at("dispersion");
  only_keys(dj, "dispersion", {"preset", "dim", "coefficients"});
  if (!dj.contains("dim")) fail("dispersion.dim", "missing required field");
  cfg.dim = get_int(dj.at("dim"), "dispersion.dim");
  if (cfg.dim != 1 && cfg.dim != 2) fail("dispersion.dim", "only d = 1 and d = 2 are supported");
  const bool has_preset = dj.contains("preset"), has_coeffs = dj.contains("coefficients");
  if (has_preset == has_coeffs) fail("dispersion", "give exactly one of 'preset' or 'coefficients'");
  if (has_preset) {
    if (dj.at("preset") != "laplacian") fail("dispersion.preset", "only 'laplacian' is known");
    cfg.coeffs = GeneratingCoefficients::laplacian(cfg.dim);
  } else {
    const json& arr = dj.at("coefficients");
    if (!arr.is_array() || arr.empty()) fail("dispersion.coefficients", "expected a non-empty array");
    std::vector<CoeffEntry> es;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "dispersion.coefficients[" + std::to_string(i) + "]";
      only_keys(arr[i], p, {"x", "re", "im"});
      if (!arr[i].contains("x")) fail(p + ".x", "missing required field");
      CoeffEntry e;
      e.x = get_site(arr[i].at("x"), cfg.dim, p + ".x");
      const double im = arr[i].contains("im") ? get_number(arr[i], "im", p + ".im") : 0.0;
      e.value = {get_number(arr[i], "re", p + ".re"), im};
      es.push_back(e);
    }
    try {
      cfg.coeffs = GeneratingCoefficients::from_entries(cfg.dim, es);
    } catch (const Error& e) {
      fail("dispersion.coefficients", e.what());
    }
  }
  json cj = json::array();
  for (const auto& e : cfg.coeffs.entries())
    cj.push_back({{"x", site_json(e.x, cfg.dim)}, {"re", e.value.real()}, {"im", e.value.imag()}});
  norm["dispersion"] = {{"dim", cfg.dim}, {"coefficients", cj}};

  // potential
  if (!j.contains("potential")) fail("potential", "missing required field");
  const json& pj = j.at("potential");
  if (!pj.is_array() || pj.empty()) fail("potential", "expected a non-empty array");
  std::vector<PotentialEntry> ps;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string p = "potential[" + std::to_string(i) + "]";
    only_keys(pj[i], p, {"x", "v"});
    if (!pj[i].contains("x")) fail(p + ".x", "missing required field");
    ps.push_back({get_site(pj[i].at("x"), cfg.dim, p + ".x"), get_number(pj[i], "v", p + ".v")});
  }
  try {
    cfg.potential = LatticePotential::from_entries(cfg.dim, ps);
  } catch (const Error& e) {
    fail("potential", e.what());
  }
  json vj = json::array();
  for (const auto& e : cfg.potential.entries()) vj.push_back({{"x", site_json(e.x, cfg.dim)}, {"v", e.v}});
  norm["potential"] = vj;

  cfg.gamma = get_number(j, "gamma", "gamma");
  if (!(cfg.gamma > 0.0)) fail("gamma", "must be > 0");
  norm["gamma"] = cfg.gamma;
  if (j.contains("permissive_weight")) {
    if (!j.at("permissive_weight").is_boolean()) fail("permissive_weight", "expected a boolean");
    cfg.permissive_weight = j.at("permissive_weight").get<bool>();
  }
  norm["permissive_weight"] = cfg.permissive_weight;

  // mu grid
  try {
    if (j.contains("mu_grid")) {
      const json& mj = j.at("mu_grid");
      if (mj.is_object() && mj.contains("values")) {
        only_keys(mj, "mu_grid", {"values"});
        if (!mj.at("values").is_array()) fail("mu_grid.values", "expected an array");
        std::vector<double> v;
        for (std::size_t i = 0; i < mj.at("values").size(); ++i) {
          const json& x = mj.at("values")[i];
          if (!x.is_number()) fail("mu_grid.values[" + std::to_string(i) + "]", "expected a number");
          v.push_back(x.get<double>());
        }
        cfg.mu_grid = MuGrid::from_values(v);
      } else {
        only_keys(mj, "mu_grid", {"start", "factor", "count"});
        if (!mj.contains("count")) fail("mu_grid.count", "missing required field");
        cfg.mu_grid = MuGrid::geometric(get_number(mj, "start", "mu_grid.start"),
                                        get_number(mj, "factor", "mu_grid.factor"),
                                        get_int(mj.at("count"), "mu_grid.count"));
      }
    } else {
      cfg.mu_grid = MuGrid::geometric(0.1, 0.5, 4);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    fail("mu_grid", e.what());
  }
  norm["mu_grid"] = {{"values", cfg.mu_grid.values}};

  if (j.contains("z")) {
    const json& zj = j.at("z");
    if (!zj.is_array()) fail("z", "expected an array of numbers");
    for (std::size_t i = 0; i < zj.size(); ++i) {
      if (!zj[i].is_number()) fail("z[" + std::to_string(i) + "]", "expected a number");
      cfg.z_values.push_back(zj[i].get<double>());
    }
  }
  norm["z"] = cfg.z_values;

  json sj = json::array();
  if (j.contains("sites")) {
    const json& s = j.at("sites");
    if (!s.is_array()) fail("sites", "expected an array of sites");
    for (std::size_t i = 0; i < s.size(); ++i)
      cfg.sites.push_back(get_site(s[i], cfg.dim, "sites[" + std::to_string(i) + "]"));
  } else {
    cfg.sites.push_back({0, 0});
  }
  for (const auto& s : cfg.sites) sj.push_back(site_json(s, cfg.dim));
  norm["sites"] = sj;

  if (j.contains("edge")) {
    const json& e = j.at("edge");
    if (!e.is_string() || (e != "auto" && e != "top" && e != "bottom"))
      fail("edge", "expected 'auto', 'top' or 'bottom'");
    cfg.edge = e.get<std::string>();
  }
  norm["edge"] = cfg.edge;

  cfg.quad = QuadratureSpec::defaults(cfg.dim);
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    only_keys(q, "quadrature", {"base_n", "max_refine", "abs_tol", "edge_treatment"});
    if (q.contains("base_n")) cfg.quad.base_n = get_int(q.at("base_n"), "quadrature.base_n");
    if (q.contains("max_refine")) cfg.quad.max_refine = get_int(q.at("max_refine"), "quadrature.max_refine");
    if (q.contains("abs_tol")) cfg.quad.abs_tol = get_number(q, "abs_tol", "quadrature.abs_tol");
    if (q.contains("edge_treatment")) {
      if (!q.at("edge_treatment").is_boolean()) fail("quadrature.edge_treatment", "expected a boolean");
      cfg.quad.edge_treatment = q.at("edge_treatment").get<bool>();
    }
  }
  try {
    cfg.quad.validate();
  } catch (const Error& e) {
    fail("quadrature", e.what());
  }
  norm["quadrature"] = {{"base_n", cfg.quad.base_n}, {"max_refine", cfg.quad.max_refine},
                        {"abs_tol", cfg.quad.abs_tol}, {"edge_treatment", cfg.quad.edge_treatment}};

  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    only_keys(o, "oracle", {"L", "boundary", "margin"});
    if (o.contains("L")) cfg.oracle.L = get_int(o.at("L"), "oracle.L");
    if (o.contains("boundary")) {
      const json& b = o.at("boundary");
      if (b == "dirichlet") cfg.oracle.boundary = Boundary::dirichlet;
      else if (b == "periodic") cfg.oracle.boundary = Boundary::periodic;
      else fail("oracle.boundary", "expected 'dirichlet' or 'periodic'");
    }
    if (o.contains("margin")) cfg.oracle.margin = get_number(o, "margin", "oracle.margin");
  }
  if (cfg.oracle.L < 32) fail("oracle.L", "must be >= 32");
  if (cfg.oracle.margin < 0.0) fail("oracle.margin", "must be >= 0");
  norm["oracle"] = {{"L", cfg.oracle.L}, {"boundary", to_string(cfg.oracle.boundary)},
                    {"margin", cfg.oracle.margin}};

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    only_keys(o, "outputs", {"directory", "manifest"});
    if (o.contains("directory")) {
      if (!o.at("directory").is_string()) fail("outputs.directory", "expected a string");
      cfg.output_dir = o.at("directory").get<std::string>();
    }
    if (o.contains("manifest")) {
      if (!o.at("manifest").is_boolean()) fail("outputs.manifest", "expected a boolean");
      cfg.write_manifest = o.at("manifest").get<bool>();
    }
  }
  norm["outputs"] = {{"directory", cfg.output_dir}, {"manifest", cfg.write_manifest}};

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail("seed", "expected a non-negative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  norm["seed"] = cfg.seed;

  cfg.normalized = std::move(norm);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::config, "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::config, path + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace latbound
