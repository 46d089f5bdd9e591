// Batch runner: verification suites, spectra and the config schema.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sympspin/verify.hpp"

namespace {

int thread_count() {
  const char* env = std::getenv("SYMPSPIN_THREADS");
  if (!env) return 1;
  const int t = std::atoi(env);
  return t > 0 ? t : 1;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    int d = 0;
    try {
      d = std::stoi(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || d < 0) throw sympspin::ConfigError("--degrees: bad entry '" + item + "'");
    out.push_back(d);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sympspin::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sympspin: symplectic spinor verification and spectra"};
  app.set_version_flag("--version", std::string(SYMPSPIN_VERSION));
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, degrees = "0";
  std::vector<std::string> suites;
  bool no_timing = false;
  int budget = 2500;

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  verify->add_option("--config", config_path, "Experiment configuration (JSON)")->required();
  verify->add_option("--suite", suites, "Suites to run (default: those in the config)");
  verify->add_option("--out", out_path, "Report path (default: stdout)");
  verify->add_flag("--no-timing", no_timing, "Write runtime_ms as 0 for byte-identical reports");

  CLI::App* spec = app.add_subcommand("spectrum", "Eigenvalues of P per fiber degree as CSV");
  spec->add_option("--config", config_path, "Experiment configuration (JSON)")->required();
  spec->add_option("--degrees", degrees, "Comma-separated fiber degrees");
  spec->add_option("--out", csv_path, "CSV path (default: stdout)");
  spec->add_option("--budget", budget, "Maximum block dimension");

  CLI::App* schema = app.add_subcommand("schema", "Print the configuration JSON schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*schema) {
      std::cout << sympspin::config_schema().dump(2) << "\n";
      return 0;
    }
    sympspin::ExperimentConfig cfg = sympspin::load_config(config_path);
    if (*verify) {
      if (!suites.empty()) {
        nlohmann::json j = sympspin::config_to_json(cfg);
        j["suites"] = suites;
        cfg = sympspin::config_from_json(j);
      }
      const sympspin::Report rep = sympspin::run_verify(cfg, thread_count());
      write_text(out_path, sympspin::report_to_json(rep, !no_timing).dump(2) + "\n");
      for (const auto& c : rep.checks)
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual=" << c.max_residual
                  << "  tol=" << c.tolerance << "\n";
      return rep.all_pass() ? 0 : 1;
    }
    if (*spec) {
      const auto rows = sympspin::run_spectrum(cfg, parse_degrees(degrees), budget);
      write_text(csv_path, sympspin::spectrum_csv(rows));
      return 0;
    }
  } catch (const sympspin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sympspin::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
