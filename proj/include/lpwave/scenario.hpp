#ifndef LPWAVE_SCENARIO_HPP
#define LPWAVE_SCENARIO_HPP

#include <map>
#include <string>
#include <vector>

namespace lpwave {

/// Flat key-value config with [section] headers, '#' comments and one
/// `key = value` pair per line. Values keep their raw text; typed access
/// goes through the getters. Unknown sections or keys are rejected by the
/// per-verb validators so typos fail loudly.
class ConfigFile {
public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_text(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback = "") const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  double require_double(const std::string& section,
                        const std::string& key) const;
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;

  /// Sections in file order with their key-value pairs; used for the echo
  /// block of the run manifest.
  const std::vector<std::pair<std::string,
                              std::vector<std::pair<std::string, std::string>>>>&
  sections() const {
    return sections_;
  }

  /// Throws std::invalid_argument when a section/key outside the allowed
  /// table appears. The table maps section name to allowed keys.
  void restrict_to(
      const std::map<std::string, std::vector<std::string>>& allowed) const;

private:
  std::vector<
      std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
      sections_;
  const std::string* find(const std::string& section,
                          const std::string& key) const;
};

// Exit codes shared by the CLI and the pipeline functions.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;     // unreadable/invalid config
inline constexpr int kExitUnknownName = 2;
inline constexpr int kExitSolverFailure = 3;
inline constexpr int kExitHypothesis = 4;

/// Runs the full pipeline of a scenario config: builds the registries'
/// damping/profile/initial data, solves, writes <id>_norms.csv, analysis
/// CSVs per directive and <id>_manifest.txt under out_dir. Returns an exit
/// code.
int run_scenario(const ConfigFile& cfg, const std::string& out_dir,
                 bool quiet);

/// Runs the semi-global sweep of a scenario config over its sweep_R list
/// and writes <id>_sweep.csv.
int run_sweep(const ConfigFile& cfg, const std::string& out_dir, bool quiet);

/// Builds the Lyapunov certificate for the configured LTV system, verifies
/// the decay inequalities on random piecewise-constant gain draws, and
/// writes per-draw CSVs plus a manifest.
int run_certify(const ConfigFile& cfg, const std::string& out_dir, bool quiet);

/// Validates a catalog damping by name; prints the report. Returns
/// kExitUnknownName for a registry miss and kExitHypothesis when
/// violations were found.
int run_validate_damping(const std::string& name,
                         const std::map<std::string, double>& params,
                         double radius, int samples, bool quiet);

}  // namespace lpwave

#endif
