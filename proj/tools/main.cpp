// lpwave: experiment runner for the damped 1D wave lab.
//
//   lpwave run <config>              solve a scenario, write norms/analysis CSV
//   lpwave sweep <config>            semi-global R sweep
//   lpwave validate-damping <name>   probe a catalog damping
//   lpwave certify-ltv <config>      Lyapunov certificate + decay verification
//
// All outputs are deterministic CSV/text; see README for the config format.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>

#include "lpwave/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"1D wave equation with localized nonlinear damping: "
               "solvers, energies and decay certificates"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output");

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config)
      sub->add_option("config", config_path, "scenario config file")
          ->required();
    sub->add_option("--out", out_dir, "output directory (default: out)");
  };

  CLI::App* run = app.add_subcommand("run", "run a scenario pipeline");
  add_common(run, true);
  CLI::App* sweep = app.add_subcommand("sweep", "semi-global R sweep");
  add_common(sweep, true);
  CLI::App* certify =
      app.add_subcommand("certify-ltv", "build and verify a Lyapunov certificate");
  add_common(certify, true);

  std::string damping_name;
  std::vector<std::string> damping_params;
  double radius = 5.0;
  int samples = 1001;
  CLI::App* validate =
      app.add_subcommand("validate-damping", "validate a catalog damping");
  validate->add_option("name", damping_name, "catalog damping name")
      ->required();
  validate->add_option("params", damping_params, "key=value parameters");
  validate->add_option("--radius", radius, "probe radius (default 5)");
  validate->add_option("--samples", samples, "probe grid size (default 1001)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      std::map<std::string, double> params;
      for (const auto& kv : damping_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          std::cerr << "parameter '" << kv << "' is not key=value\n";
          return lpwave::kExitConfig;
        }
        params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      return lpwave::run_validate_damping(damping_name, params, radius,
                                          samples, quiet);
    }

    const lpwave::ConfigFile cfg = lpwave::ConfigFile::parse_file(config_path);
    if (run->parsed()) return lpwave::run_scenario(cfg, out_dir, quiet);
    if (sweep->parsed()) return lpwave::run_sweep(cfg, out_dir, quiet);
    if (certify->parsed()) return lpwave::run_certify(cfg, out_dir, quiet);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lpwave::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lpwave::kExitConfig;
  }
  return lpwave::kExitOk;
}
