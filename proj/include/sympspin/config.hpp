#pragma once

// Experiment configuration for the batch runner (JSON).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympspin/connection.hpp"

namespace sympspin {

struct ExperimentConfig {
  int n = 1;
  double hbar = 1.0;
  int fock_N = 6;
  int torus_M = 4;
  int torus_grid = 0;
  std::vector<GammaMode> gamma_modes;
  std::vector<AMode> a_modes;
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  // Per-check overrides of the default tolerances, keyed by check name.
  std::map<std::string, double> tolerances;
  int quad_order = 60;

  SymplecticModel<double> model() const { return SymplecticModel<double>::standard(n, hbar); }
  TorusModel torus() const { return TorusModel(model(), torus_M, torus_grid); }
  Connection connection() const { return Connection::from_modes(torus(), gamma_modes, a_modes); }
  double tolerance(const std::string& check, double fallback) const;
};

// Names of all verification suites in report order.
const std::vector<std::string>& suite_names();

// JSON schema (draft 2020-12) for the configuration file.
nlohmann::json config_schema();

ExperimentConfig default_config();

// Parse and validate; throws ConfigError on schema violations, connection
// matrices outside sp(V, Omega), or a non-unitary connection with the dirac suite.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& c);

}  // namespace sympspin
