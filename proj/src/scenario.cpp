#include "lpwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "lpwave/analysis.hpp"
#include "lpwave/characteristics.hpp"
#include "lpwave/damping.hpp"
#include "lpwave/energy.hpp"
#include "lpwave/errors.hpp"
#include "lpwave/ltv.hpp"
#include "lpwave/wave.hpp"

namespace lpwave {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ConfigFile ConfigFile::parse_text(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_.emplace_back(section,
                                 std::vector<std::pair<std::string, std::string>>{});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value inside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    cfg.sections_.back().second.emplace_back(key, value);
  }
  return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

const std::string* ConfigFile::find(const std::string& section,
                                    const std::string& key) const {
  for (const auto& [name, kvs] : sections_) {
    if (name != section) continue;
    for (const auto& [k, v] : kvs)
      if (k == key) return &v;
  }
  return nullptr;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) const {
  const std::string* v = find(section, key);
  return v ? *v : fallback;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key, double fallback) const {
  const std::string* v = find(section, key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    const double d = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: [" + section + "] " + key + " = '" +
                                *v + "' is not a number");
  }
}

double ConfigFile::require_double(const std::string& section,
                                  const std::string& key) const {
  if (!has(section, key))
    throw std::invalid_argument("config: missing [" + section + "] " + key);
  return get_double(section, key, 0.0);
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
  std::vector<double> out;
  const std::string* v = find(section, key);
  if (!v) return out;
  std::istringstream ss(*v);
  std::string tok;
  while (ss >> tok) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("config: [" + section + "] " + key +
                                  " has non-numeric entry '" + tok + "'");
    }
  }
  return out;
}

void ConfigFile::restrict_to(
    const std::map<std::string, std::vector<std::string>>& allowed) const {
  for (const auto& [name, kvs] : sections_) {
    const auto it = allowed.find(name);
    if (it == allowed.end())
      throw std::invalid_argument("config: unknown section [" + name + "]");
    for (const auto& [k, v] : kvs)
      if (std::find(it->second.begin(), it->second.end(), k) ==
          it->second.end())
        throw std::invalid_argument("config: unknown key '" + k +
                                    "' in section [" + name + "]");
  }
}

// -------------------------------------------------------------------------
// registries

namespace {

std::map<std::string, double> numeric_params(const ConfigFile& cfg,
                                             const std::string& section) {
  std::map<std::string, double> out;
  for (const auto& [name, kvs] : cfg.sections()) {
    if (name != section) continue;
    for (const auto& [k, v] : kvs) {
      if (k == "name" || k == "points" || k == "z0_points" || k == "z1_points")
        continue;
      out[k] = cfg.get_double(section, k, 0.0);
    }
  }
  return out;
}

std::vector<std::pair<double, double>> parse_points(const std::string& text) {
  std::vector<std::pair<double, double>> pts;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("config: table entry '" + tok +
                                  "' is not x:value");
    pts.emplace_back(std::stod(tok.substr(0, colon)),
                     std::stod(tok.substr(colon + 1)));
  }
  return pts;
}

std::optional<DampingProfile> profile_from_config(const ConfigFile& cfg,
                                                  Grid g) {
  const std::string name = cfg.get_string("profile", "name", "constant");
  if (name == "constant")
    return DampingProfile::constant(g, cfg.get_double("profile", "value", 1.0));
  if (name == "bump")
    return DampingProfile::bump(g, cfg.get_double("profile", "center", 0.5),
                                cfg.get_double("profile", "width", 0.4),
                                cfg.get_double("profile", "amp", 1.0));
  if (name == "table")
    return DampingProfile::from_table(
        g, parse_points(cfg.get_string("profile", "points")));
  return std::nullopt;
}

// initial data catalog: standing(k) = (sin(k pi x), 0); pulse = (sin^2(pi x), 0)
std::optional<std::pair<GridFn, GridFn>> initial_from_config(
    const ConfigFile& cfg, Grid g) {
  const std::string name = cfg.get_string("initial", "name", "standing");
  if (name == "standing") {
    const double k = cfg.get_double("initial", "k", 1.0);
    GridFn z0 = GridFn::sample(
        g, [k](double x) { return std::sin(k * M_PI * x); }, true);
    return std::make_pair(z0, GridFn::zero(g, true));
  }
  if (name == "pulse") {
    GridFn z0 = GridFn::sample(
        g,
        [](double x) {
          const double s = std::sin(M_PI * x);
          return s * s;
        },
        true);
    return std::make_pair(z0, GridFn::zero(g, true));
  }
  if (name == "table") {
    auto sample_table = [&](const std::string& key) {
      const std::string text = cfg.get_string("initial", key);
      if (text.empty()) return GridFn::zero(g, true);
      const auto pts = parse_points(text);
      auto eval = [&pts](double x) {
        if (x <= pts.front().first) return pts.front().second;
        if (x >= pts.back().first) return pts.back().second;
        std::size_t i = 1;
        while (pts[i].first < x) ++i;
        const auto& [xa, ya] = pts[i - 1];
        const auto& [xb, yb] = pts[i];
        return ya + (yb - ya) * (x - xa) / (xb - xa);
      };
      return GridFn::sample(g, eval, true);
    };
    return std::make_pair(sample_table("z0_points"), sample_table("z1_points"));
  }
  return std::nullopt;
}

CharSolverConfig solver_from_config(const ConfigFile& cfg) {
  CharSolverConfig sc;
  if (cfg.has("solver", "window_T"))
    sc.window_T = cfg.require_double("solver", "window_T");
  sc.picard_tol = cfg.get_double("solver", "picard_tol", sc.picard_tol);
  sc.picard_max_iter = static_cast<int>(
      cfg.get_double("solver", "picard_max_iter", sc.picard_max_iter));
  sc.ball_margin = cfg.get_double("solver", "ball_margin", sc.ball_margin);
  const std::string pairing = cfg.get_string("solver", "pairing", "matched");
  if (pairing == "matched")
    sc.pairing = SourcePairing::matched;
  else if (pairing == "crossed")
    sc.pairing = SourcePairing::crossed;
  else
    throw std::invalid_argument("config: [solver] pairing must be matched or crossed");
  return sc;
}

const std::map<std::string, std::vector<std::string>> kScenarioKeys = {
    {"scenario", {"id", "grid_n", "t_end", "sample_dt"}},
    {"damping", {"name", "k", "coeff", "r"}},
    {"profile", {"name", "value", "center", "width", "amp", "points"}},
    {"initial", {"name", "k", "R", "z0_points", "z1_points"}},
    {"solver",
     {"window_T", "picard_tol", "picard_max_iter", "ball_margin", "pairing"}},
    {"analysis", {"p_list", "q_list", "fit_window", "thm25", "sweep_R"}},
};

struct ManifestWriter {
  std::ostringstream body;

  void echo_config(const ConfigFile& cfg) {
    body << "[config]\n";
    for (const auto& [name, kvs] : cfg.sections())
      for (const auto& [k, v] : kvs) body << name << "." << k << " = " << v << "\n";
  }
  void section(const std::string& name) { body << "[" << name << "]\n"; }
  void kv(const std::string& key, const std::string& value) {
    body << key << " = " << value << "\n";
  }
  void kv(const std::string& key, double value) { kv(key, fmt(value)); }
  void write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    out << body.str();
  }
};

struct ScenarioSetup {
  std::string id;
  Grid grid;
  DampingSpec damping;
  DampingProfile profile;
  GridFn z0, z1;
  std::optional<double> R;
  double t_end, sample_dt, fit_lo, fit_hi;
  CharSolverConfig solver;
  std::vector<double> p_list, q_list, sweep_R;
  bool thm25 = false;
};

// Builds all registry objects; returns an exit code != 0 on a registry
// miss (after printing the unknown name).
int build_setup(const ConfigFile& cfg, bool quiet, ScenarioSetup& s) {
  cfg.restrict_to(kScenarioKeys);
  s.id = cfg.get_string("scenario", "id", "scenario");
  s.grid = Grid{static_cast<int>(cfg.get_double("scenario", "grid_n", 256))};
  if (s.grid.n < 2) throw std::invalid_argument("config: grid_n >= 2 required");
  s.t_end = cfg.get_double("scenario", "t_end", 10.0);
  s.sample_dt = cfg.get_double("scenario", "sample_dt", 0.0625);

  const std::string dname = cfg.get_string("damping", "name", "saturation");
  auto damping = damping_by_name(dname, numeric_params(cfg, "damping"));
  if (!damping) {
    std::cerr << "unknown damping name: " << dname << "\n";
    return kExitUnknownName;
  }
  s.damping = *damping;

  auto profile = profile_from_config(cfg, s.grid);
  if (!profile) {
    std::cerr << "unknown profile name: " << cfg.get_string("profile", "name")
              << "\n";
    return kExitUnknownName;
  }
  s.profile = *profile;
  validate_profile(s.profile);

  auto initial = initial_from_config(cfg, s.grid);
  if (!initial) {
    std::cerr << "unknown initial-data name: "
              << cfg.get_string("initial", "name") << "\n";
    return kExitUnknownName;
  }
  s.z0 = initial->first;
  s.z1 = initial->second;
  if (cfg.has("initial", "R")) {
    s.R = cfg.require_double("initial", "R");
    scale_to_hinf(s.z0, s.z1, *s.R);
  }

  s.solver = solver_from_config(cfg);
  s.solver.grid_n = s.grid.n;

  const auto window = cfg.get_double_list("analysis", "fit_window");
  if (window.size() == 2) {
    s.fit_lo = window[0];
    s.fit_hi = window[1];
  } else if (window.empty()) {
    s.fit_lo = 0.25 * s.t_end;  // skip transients by default
    s.fit_hi = s.t_end;
  } else {
    throw std::invalid_argument("config: fit_window needs two entries");
  }
  s.p_list = cfg.get_double_list("analysis", "p_list");
  s.q_list = cfg.get_double_list("analysis", "q_list");
  s.sweep_R = cfg.get_double_list("analysis", "sweep_R");
  s.thm25 = cfg.get_string("analysis", "thm25", "false") == "true";
  (void)quiet;
  return kExitOk;
}

void summarize_solver_stats(const Trajectory& traj, ManifestWriter& mf) {
  mf.section("solver");
  mf.kv("windows", static_cast<double>(traj.stats.windows.size()));
  int total_iters = 0;
  double max_ratio = 0.0, max_ball_fraction = 0.0, max_contraction = 0.0;
  for (const auto& w : traj.stats.windows) {
    total_iters += w.iterations;
    max_ratio = std::max(max_ratio, w.max_ratio);
    if (w.ball_radius > 0.0)
      max_ball_fraction =
          std::max(max_ball_fraction, w.max_ball_dist / w.ball_radius);
    max_contraction = std::max(max_contraction, w.contraction_bound);
  }
  mf.kv("picard_total_iterations", static_cast<double>(total_iters));
  mf.kv("picard_max_ratio", max_ratio);
  mf.kv("picard_max_ball_fraction", max_ball_fraction);
  mf.kv("picard_max_contraction_bound", max_contraction);
}

}  // namespace

int run_scenario(const ConfigFile& cfg, const std::string& out_dir,
                 bool quiet) {
  ScenarioSetup s;
  const int rc = build_setup(cfg, quiet, s);
  if (rc != kExitOk) return rc;

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  std::vector<std::string> warnings;
  const bool decay_analysis = !s.p_list.empty() || s.thm25;

  // hypothesis screening for decay scenarios
  const double r_eff =
      s.R ? *s.R
          : hp_norm(WaveState{0.0, s.z0, s.z1},
                    std::numeric_limits<double>::infinity());
  const ValidationReport vr = validate_damping(s.damping, std::max(r_eff, 1.0),
                                               2001);
  SectorBounds sector{};
  if (r_eff > 0.0)
    sector = sector_bounds(s.damping, r_eff, SectorMode::quotient);
  if (decay_analysis) {
    if (!vr.passed) {
      std::cerr << "hypothesis violation: damping '" << s.damping.name
                << "' fails validation (" << vr.violations.size()
                << " violations)\n";
      return kExitHypothesis;
    }
    if (sector.nonpositive_d0) {
      std::cerr << "hypothesis violation: sector bound d0 = " << fmt(sector.d0)
                << " <= 0 over [-2R, 2R], R = " << fmt(r_eff) << "\n";
      return kExitHypothesis;
    }
  } else if (!vr.passed) {
    warnings.push_back("damping fails validation with " +
                       std::to_string(vr.violations.size()) + " violations");
  }

  Trajectory traj;
  try {
    traj = solve(s.z0, s.z1, s.damping, s.profile, s.t_end, s.sample_dt,
                 s.solver);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }

  {
    std::ofstream out(dir / (s.id + "_norms.csv"), std::ios::binary);
    write_energy_csv(traj, out);
  }

  ManifestWriter mf;
  mf.body << "# lpwave run manifest\n";
  mf.echo_config(cfg);
  summarize_solver_stats(traj, mf);

  mf.section("results");
  const double inf = std::numeric_limits<double>::infinity();
  if (s.R) {
    double max_ratio = 0.0;
    for (const auto& st : traj.states) {
      GridFn zx{st.z.grid, state_zx(st), false};
      const double sup = std::max(lp_norm(zx, inf), lp_norm(st.v, inf));
      max_ratio = std::max(max_ratio, sup / (2.0 * *s.R));
    }
    mf.kv("hinf_max_over_2R", max_ratio);
  }
  mf.kv("sector_d0", sector.d0);
  mf.kv("sector_d1", sector.d1);
  mf.kv("h2_final", hp_norm(traj.states.back(), 2.0));

  if (!s.p_list.empty()) {
    std::ofstream out(dir / (s.id + "_interp.csv"), std::ios::binary);
    out << "p,K2,beta2,Kp,betap,r2_2,r2_p,predicted,rate_ok,hoelder_violations,"
           "max_hoelder_excess\n";
    for (const double p : s.p_list) {
      const InterpReport rep = interp_consistency(traj, p, s.fit_lo, s.fit_hi);
      out << fmt(p) << ',' << fmt(rep.fit2.K) << ',' << fmt(rep.fit2.beta)
          << ',' << fmt(rep.fitp.K) << ',' << fmt(rep.fitp.beta) << ','
          << fmt(rep.fit2.r_squared) << ',' << fmt(rep.fitp.r_squared) << ','
          << fmt(rep.predicted) << ',' << (rep.rate_ok ? 1 : 0) << ','
          << rep.hoelder_violations << ',' << fmt(rep.max_hoelder_excess)
          << "\n";
      if (rep.hoelder_violations > 0)
        warnings.push_back("hoelder violations at p = " + fmt(p));
    }
  }

  if (!s.q_list.empty()) {
    std::vector<std::pair<double, double>> h2;
    for (const auto& st : traj.states) h2.emplace_back(st.t, hp_norm(st, 2.0));
    const DecayFit fit2 = fit_decay(h2, s.fit_lo, s.fit_hi);
    std::ofstream out(dir / (s.id + "_rates_q.csv"), std::ios::binary);
    out << "p,q,predicted\n";
    for (const double p : s.p_list)
      for (const double q : s.q_list)
        if (q >= 2.0 && q < p)
          out << fmt(p) << ',' << fmt(q) << ','
              << fmt(predicted_rate(fit2.beta, p, q)) << "\n";
  }

  if (s.thm25) {
    try {
      const InftyReport rep =
          thm_infty_scenario(s.z0, s.z1, s.damping, s.profile, s.t_end,
                             s.sample_dt, s.fit_lo, s.fit_hi, s.solver);
      std::ofstream out(dir / (s.id + "_thm25.csv"), std::ios::binary);
      out << "K1,K2,beta1,beta2,beta_w,envelope_coeff,d2_norm0,"
             "envelope_violations,max_envelope_ratio,passed\n";
      out << fmt(rep.K1) << ',' << fmt(rep.K2) << ',' << fmt(rep.beta1_used)
          << ',' << fmt(rep.fit_base.beta) << ',' << fmt(rep.fit_w.beta) << ','
          << fmt(rep.envelope_coeff) << ',' << fmt(rep.d2_norm0) << ','
          << rep.envelope_violations << ',' << fmt(rep.max_envelope_ratio)
          << ',' << (rep.passed ? 1 : 0) << "\n";
      if (!rep.passed) warnings.push_back("thm25 envelope violations");
    } catch (const HypothesisError& e) {
      std::cerr << "hypothesis violation: " << e.what() << "\n";
      return kExitHypothesis;
    }
  }

  mf.section("warnings");
  if (warnings.empty()) {
    mf.kv("count", 0.0);
  } else {
    mf.kv("count", static_cast<double>(warnings.size()));
    for (std::size_t i = 0; i < warnings.size(); ++i)
      mf.kv("warning" + std::to_string(i), warnings[i]);
  }
  mf.write(dir / (s.id + "_manifest.txt"));

  if (!quiet)
    std::cout << s.id << ": " << traj.states.size() << " samples, "
              << traj.stats.windows.size() << " windows -> " << out_dir
              << "\n";
  return kExitOk;
}

int run_sweep(const ConfigFile& cfg, const std::string& out_dir, bool quiet) {
  ScenarioSetup s;
  const int rc = build_setup(cfg, quiet, s);
  if (rc != kExitOk) return rc;
  if (s.sweep_R.empty()) {
    std::cerr << "sweep: config has no [analysis] sweep_R list\n";
    return kExitConfig;
  }

  SweepScenario sweep;
  sweep.z0 = s.z0;
  sweep.z1 = s.z1;
  sweep.damping = s.damping;
  sweep.profile = s.profile;
  sweep.t_end = s.t_end;
  sweep.sample_dt = s.sample_dt;
  sweep.fit_lo = s.fit_lo;
  sweep.fit_hi = s.fit_hi;
  sweep.solver = s.solver;

  std::vector<SweepRow> rows;
  try {
    rows = semi_global_sweep(sweep, s.sweep_R);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }

  std::filesystem::create_directories(out_dir);
  std::ofstream out(std::filesystem::path(out_dir) / (s.id + "_sweep.csv"),
                    std::ios::binary);
  out << "R,d0,d1,K,beta,r2\n";
  for (const auto& r : rows)
    out << fmt(r.R) << ',' << fmt(r.d0) << ',' << fmt(r.d1) << ',' << fmt(r.K)
        << ',' << fmt(r.beta) << ',' << fmt(r.r_squared) << "\n";
  if (!quiet)
    std::cout << s.id << ": " << rows.size() << " sweep rows -> " << out_dir
              << "\n";
  return kExitOk;
}

namespace {

const std::map<std::string, std::vector<std::string>> kCertifyKeys = {
    {"ltv",
     {"id", "system", "n", "d0", "d1", "C", "draws", "t_end", "dt",
      "switch_dt", "seed"}},
    {"profile", {"name", "value", "center", "width", "amp", "points"}},
};

}  // namespace

int run_certify(const ConfigFile& cfg, const std::string& out_dir,
                bool quiet) {
  cfg.restrict_to(kCertifyKeys);
  const std::string id = cfg.get_string("ltv", "id", "certify");
  const std::string system = cfg.get_string("ltv", "system", "oscillator");
  const double d0 = cfg.get_double("ltv", "d0", 1.0);
  const double d1 = cfg.get_double("ltv", "d1", 2.0);
  const double C = cfg.get_double("ltv", "C", 1.0);
  const int draws = static_cast<int>(cfg.get_double("ltv", "draws", 20));
  const double t_end = cfg.get_double("ltv", "t_end", 20.0);
  const double dt = cfg.get_double("ltv", "dt", 0.01);
  const double switch_dt = cfg.get_double("ltv", "switch_dt", 0.5);
  const unsigned long long seed = static_cast<unsigned long long>(
      cfg.get_double("ltv", "seed", 20240718));

  LTVSystem sys;
  Eigen::VectorXd v0;
  if (system == "oscillator") {
    sys.A = Eigen::MatrixXd{{0.0, 1.0}, {-1.0, 0.0}};
    sys.B = Eigen::MatrixXd{{0.0}, {1.0}};
    v0 = Eigen::Vector2d(1.0, 0.0);
  } else if (system == "wave") {
    const int n = static_cast<int>(cfg.get_double("ltv", "n", 32));
    auto profile = profile_from_config(cfg, Grid{n});
    if (!profile) {
      std::cerr << "unknown profile name: "
                << cfg.get_string("profile", "name") << "\n";
      return kExitUnknownName;
    }
    sys = discretize_wave(n, *profile, d0, d1, nullptr);
    // initial state: energy coordinates of (sin(pi x), 0)
    v0 = Eigen::VectorXd::Zero(sys.A.rows());
    Eigen::VectorXd z0(n - 1);
    for (int i = 0; i < n - 1; ++i) z0[i] = std::sin(M_PI * (i + 1) / n);
    v0.head(n - 1) = sys.A.topRightCorner(n - 1, n - 1) * z0;
  } else {
    std::cerr << "unknown ltv system name: " << system << "\n";
    return kExitUnknownName;
  }
  sys.d0 = d0;
  sys.d1 = d1;

  const LtvValidation val = validate_ltv(sys, 0.0, 0);
  if (!val.dissipative || !val.hurwitz) {
    std::cerr << "hypothesis violation: "
              << (!val.dissipative ? "A is not dissipative"
                                   : "A - d0 BB^T is not Hurwitz")
              << "\n";
    return kExitHypothesis;
  }

  LyapunovCertificate cert;
  try {
    cert = build_certificate(sys, C);
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  }

  const Eigen::MatrixXd a_d0 = sys.A - d0 * sys.B * sys.B.transpose();
  const double residual =
      (cert.P * a_d0 + a_d0.transpose() * cert.P +
       C * Eigen::MatrixXd::Identity(sys.A.rows(), sys.A.cols()))
          .cwiseAbs()
          .maxCoeff();

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  ManifestWriter mf;
  mf.body << "# lpwave certify manifest\n";
  mf.echo_config(cfg);
  mf.section("certificate");
  mf.kv("dimension", static_cast<double>(sys.A.rows()));
  mf.kv("norm_P", cert.norm_P);
  mf.kv("M", cert.M);
  mf.kv("C", cert.C);
  mf.kv("lyapunov_residual", residual);
  mf.kv("max_sym_eig", val.max_sym_eig);
  mf.kv("spectral_abscissa_d0", val.max_real_part);

  const long long switch_steps =
      std::max(1LL, std::llround(switch_dt / dt));
  const long long total_steps =
      static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  const long long segments = (total_steps + switch_steps - 1) / switch_steps;

  int total_derivative = 0, total_envelope = 0;
  double max_slack_fraction = 0.0;
  mf.section("draws");
  for (int draw = 0; draw < draws; ++draw) {
    std::mt19937_64 rng(seed + static_cast<unsigned long long>(draw));
    std::uniform_real_distribution<double> uni(d0, d1);
    std::vector<double> values(segments);
    for (auto& v : values) v = uni(rng);
    const double seg_len = switch_steps * dt;
    sys.d = [values, seg_len](double t) {
      long long i = static_cast<long long>(std::floor(t / seg_len + 1e-12));
      if (i < 0) i = 0;
      if (i >= static_cast<long long>(values.size()))
        i = static_cast<long long>(values.size()) - 1;
      return values[static_cast<std::size_t>(i)];
    };

    DecayCheck check;
    try {
      const auto traj = simulate_ltv(sys, v0, t_end, dt);
      check = verify_decay(cert, sys, traj);
    } catch (const SolverError& e) {
      std::cerr << "solver failure: " << e.what() << "\n";
      return kExitSolverFailure;
    }
    total_derivative += check.derivative_violations;
    total_envelope += check.envelope_violations;
    max_slack_fraction = std::max(max_slack_fraction, check.max_slack_fraction);

    std::ofstream out(dir / (id + "_draw" + std::to_string(draw) + ".csv"),
                      std::ios::binary);
    write_decay_csv(check, out);
    mf.kv("draw" + std::to_string(draw) + "_derivative_violations",
          static_cast<double>(check.derivative_violations));
    mf.kv("draw" + std::to_string(draw) + "_envelope_violations",
          static_cast<double>(check.envelope_violations));
  }
  mf.section("results");
  mf.kv("total_derivative_violations", static_cast<double>(total_derivative));
  mf.kv("total_envelope_violations", static_cast<double>(total_envelope));
  mf.kv("max_slack_fraction", max_slack_fraction);
  mf.write(dir / (id + "_manifest.txt"));

  if (!quiet)
    std::cout << id << ": " << draws << " draws, "
              << total_derivative + total_envelope << " violations -> "
              << out_dir << "\n";
  return kExitOk;
}

int run_validate_damping(const std::string& name,
                         const std::map<std::string, double>& params,
                         double radius, int samples, bool quiet) {
  auto damping = damping_by_name(name, params);
  if (!damping) {
    std::cerr << "unknown damping name: " << name << "\n";
    return kExitUnknownName;
  }
  const ValidationReport report = validate_damping(*damping, radius, samples);
  if (!quiet) {
    if (report.passed) {
      std::cout << name << ": passed (radius " << fmt(radius) << ", "
                << samples << " samples)\n";
    } else {
      std::cout << name << ": " << report.violations.size()
                << " violations\n";
      for (const auto& v : report.violations)
        std::cout << "  " << v.property << " at s = " << fmt(v.point)
                  << " (value " << fmt(v.value) << ")\n";
    }
  }
  return report.passed ? kExitOk : kExitHypothesis;
}

}  // namespace lpwave
