#include "sympspin/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sympspin {

using nlohmann::json;

namespace {

const std::vector<std::string> kSuites = {"cz", "mpc", "fock", "kernels", "geometry", "dirac"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config" + (path.empty() ? std::string() : "." + path) + ": " + what);
}

void require_object(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) fail(path, "unknown key '" + key + "'");
  }
}

const json& require_key(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) fail(path, "missing required key '" + key + "'");
  return j.at(key);
}

int get_int(const json& j, const std::string& path, int lo, int hi) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) fail(path, "value " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
  return static_cast<int>(v);
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<int> get_kvec(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an integer array");
  if (static_cast<int>(j.size()) != dim) fail(path, "wave vector must have 2n entries");
  std::vector<int> k;
  for (std::size_t i = 0; i < j.size(); ++i) k.push_back(get_int(j[i], path + "[" + std::to_string(i) + "]", -1000, 1000));
  return k;
}

MatrixXd get_matrix(const json& j, const std::string& path, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) fail(path, "expected a 2n x 2n array of rows");
  MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) fail(path, "expected a 2n x 2n array of rows");
    for (int c = 0; c < dim; ++c) m(r, c) = get_number(row[c], path);
  }
  return m;
}

json matrix_json(const MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() { return kSuites; }

double ExperimentConfig::tolerance(const std::string& check, double fallback) const {
  const auto it = tolerances.find(check);
  return it == tolerances.end() ? fallback : it->second;
}

json config_schema() {
  const json matrix = {{"type", "array"}, {"items", {{"type", "array"}, {"items", {{"type", "number"}}}}}};
  const json kvec = {{"type", "array"}, {"items", {{"type", "integer"}}}};
  return {
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "sympspin experiment configuration"},
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"model"}},
      {"properties",
       {{"model",
         {{"type", "object"},
          {"additionalProperties", false},
          {"required", {"n"}},
          {"properties",
           {{"n", {{"type", "integer"}, {"minimum", 1}, {"maximum", 4}}},
            {"hbar", {{"type", "number"}, {"exclusiveMinimum", 0}}}}}}},
        {"fock",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties", {{"N", {{"type", "integer"}, {"minimum", 1}, {"maximum", 40}}}}}}},
        {"torus",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"M", {{"type", "integer"}, {"minimum", 1}, {"maximum", 64}}},
            {"grid", {{"type", "integer"}, {"minimum", 0}}}}}}},
        {"connection",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"gamma_modes",
             {{"type", "array"},
              {"items",
               {{"type", "object"},
                {"additionalProperties", false},
                {"required", {"direction", "k"}},
                {"properties",
                 {{"direction", {{"type", "integer"}, {"minimum", 0}}},
                  {"k", kvec},
                  {"cos", matrix},
                  {"sin", matrix}}}}}}},
            {"a_modes",
             {{"type", "array"},
              {"items",
               {{"type", "object"},
                {"additionalProperties", false},
                {"required", {"direction", "k"}},
                {"properties",
                 {{"direction", {{"type", "integer"}, {"minimum", 0}}},
                  {"k", kvec},
                  {"cos", {{"type", "number"}}},
                  {"sin", {{"type", "number"}}}}}}}}}}}}},
        {"suites", {{"type", "array"}, {"items", {{"type", "string"}, {"enum", kSuites}}}}},
        {"seed", {{"type", "integer"}, {"minimum", 0}}},
        {"tolerances", {{"type", "object"}, {"additionalProperties", {{"type", "number"}, {"exclusiveMinimum", 0}}}}},
        {"quad_order", {{"type", "integer"}, {"minimum", 40}, {"maximum", 200}}}}}};
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.n = 1;
  c.hbar = 1.0;
  c.fock_N = 6;
  c.torus_M = 4;
  // Torsionful single-mode u(1) connection: Gamma_1 = 0.3 cos(x^2) J, a_2 = 0.2 i sin(x^1).
  GammaMode g;
  g.direction = 0;
  g.k = {0, 1};
  g.cos_part = 0.3 * c.model().j();
  g.sin_part = MatrixXd::Zero(2, 2);
  c.gamma_modes.push_back(g);
  AMode a;
  a.direction = 1;
  a.k = {1, 0};
  a.sin_part = 0.2;
  c.a_modes.push_back(a);
  c.suites = kSuites;
  c.seed = 1;
  c.quad_order = 60;
  return c;
}

ExperimentConfig config_from_json(const json& j) {
  require_object(j, "", {"model", "fock", "torus", "connection", "suites", "seed", "tolerances", "quad_order"});
  ExperimentConfig c;
  c.gamma_modes.clear();
  c.a_modes.clear();
  const json& m = require_key(j, "", "model");
  require_object(m, "model", {"n", "hbar"});
  c.n = get_int(require_key(m, "model", "n"), "model.n", 1, 4);
  if (m.contains("hbar")) {
    c.hbar = get_number(m.at("hbar"), "model.hbar");
    if (!(c.hbar > 0)) fail("model.hbar", "must be positive");
  }
  const int dim = 2 * c.n;
  if (j.contains("fock")) {
    require_object(j.at("fock"), "fock", {"N"});
    if (j.at("fock").contains("N")) c.fock_N = get_int(j.at("fock").at("N"), "fock.N", 1, 40);
  }
  if (j.contains("torus")) {
    require_object(j.at("torus"), "torus", {"M", "grid"});
    if (j.at("torus").contains("M")) c.torus_M = get_int(j.at("torus").at("M"), "torus.M", 1, 64);
    if (j.at("torus").contains("grid")) c.torus_grid = get_int(j.at("torus").at("grid"), "torus.grid", 0, 1 << 16);
    if (c.torus_grid != 0 && c.torus_grid < 3 * c.torus_M + 1) fail("torus.grid", "must be 0 or at least 3M + 1");
  }
  if (j.contains("connection")) {
    const json& cn = j.at("connection");
    require_object(cn, "connection", {"gamma_modes", "a_modes"});
    if (cn.contains("gamma_modes")) {
      if (!cn.at("gamma_modes").is_array()) fail("connection.gamma_modes", "expected an array");
      int idx = 0;
      for (const json& e : cn.at("gamma_modes")) {
        const std::string p = "connection.gamma_modes[" + std::to_string(idx++) + "]";
        require_object(e, p, {"direction", "k", "cos", "sin"});
        GammaMode g;
        g.direction = get_int(require_key(e, p, "direction"), p + ".direction", 0, dim - 1);
        g.k = get_kvec(require_key(e, p, "k"), p + ".k", dim);
        g.cos_part = e.contains("cos") ? get_matrix(e.at("cos"), p + ".cos", dim) : MatrixXd::Zero(dim, dim);
        g.sin_part = e.contains("sin") ? get_matrix(e.at("sin"), p + ".sin", dim) : MatrixXd::Zero(dim, dim);
        const MatrixXd& om = c.model().omega();
        for (const MatrixXd* part : {&g.cos_part, &g.sin_part})
          if ((part->transpose() * om + om * *part).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, part->cwiseAbs().maxCoeff()))
            fail(p, "matrix is not in sp(V, Omega)");
        c.gamma_modes.push_back(g);
      }
    }
    if (cn.contains("a_modes")) {
      if (!cn.at("a_modes").is_array()) fail("connection.a_modes", "expected an array");
      int idx = 0;
      for (const json& e : cn.at("a_modes")) {
        const std::string p = "connection.a_modes[" + std::to_string(idx++) + "]";
        require_object(e, p, {"direction", "k", "cos", "sin"});
        AMode a;
        a.direction = get_int(require_key(e, p, "direction"), p + ".direction", 0, dim - 1);
        a.k = get_kvec(require_key(e, p, "k"), p + ".k", dim);
        a.cos_part = e.contains("cos") ? get_number(e.at("cos"), p + ".cos") : 0.0;
        a.sin_part = e.contains("sin") ? get_number(e.at("sin"), p + ".sin") : 0.0;
        c.a_modes.push_back(a);
      }
    }
  }
  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) fail("suites", "expected an array of suite names");
    for (const json& s : j.at("suites")) {
      if (!s.is_string()) fail("suites", "expected an array of suite names");
      const std::string name = s.get<std::string>();
      if (std::find(kSuites.begin(), kSuites.end(), name) == kSuites.end()) fail("suites", "unknown suite '" + name + "'");
      if (std::find(c.suites.begin(), c.suites.end(), name) == c.suites.end()) c.suites.push_back(name);
    }
  } else {
    c.suites = kSuites;
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !(j.at("seed").is_number_integer() && j.at("seed").get<long long>() >= 0))
      fail("seed", "expected a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    if (!j.at("tolerances").is_object()) fail("tolerances", "expected an object");
    for (const auto& [key, value] : j.at("tolerances").items()) {
      const double t = get_number(value, "tolerances." + key);
      if (!(t > 0)) fail("tolerances." + key, "must be positive");
      c.tolerances[key] = t;
    }
  }
  if (j.contains("quad_order")) c.quad_order = get_int(j.at("quad_order"), "quad_order", 40, 200);

  // Realize the torus and connection now so that invalid modes are load errors.
  try {
    const Connection conn = c.connection();
    if (std::find(c.suites.begin(), c.suites.end(), "dirac") != c.suites.end() && !conn.unitary_flag())
      fail("connection", "the dirac suite needs Gamma commuting with J");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail("connection", e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& c) {
  json gm = json::array(), am = json::array();
  for (const auto& g : c.gamma_modes)
    gm.push_back({{"direction", g.direction}, {"k", g.k}, {"cos", matrix_json(g.cos_part)}, {"sin", matrix_json(g.sin_part)}});
  for (const auto& a : c.a_modes) am.push_back({{"direction", a.direction}, {"k", a.k}, {"cos", a.cos_part}, {"sin", a.sin_part}});
  json tol = json::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  return {{"model", {{"n", c.n}, {"hbar", c.hbar}}},
          {"fock", {{"N", c.fock_N}}},
          {"torus", {{"M", c.torus_M}, {"grid", c.torus_grid}}},
          {"connection", {{"gamma_modes", gm}, {"a_modes", am}}},
          {"suites", c.suites},
          {"seed", c.seed},
          {"tolerances", tol},
          {"quad_order", c.quad_order}};
}

}  // namespace sympspin
