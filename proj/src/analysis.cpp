#include "lpwave/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpwave/energy.hpp"
#include "lpwave/errors.hpp"

namespace lpwave {

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series,
                   double t_lo, double t_hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : series) {
    if (t < t_lo || t > t_hi) continue;
    if (!(v > 0.0))
      throw std::invalid_argument(
          "fit_decay: nonpositive value inside the fit window");
    pts.emplace_back(t, std::log(v));
  }
  if (pts.size() < 5)
    throw std::invalid_argument("fit_decay: need at least 5 samples in window");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;

  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / m;
  for (const auto& [x, y] : pts) {
    const double r = y - (intercept + slope * x);
    ss_res += r * r;
    ss_tot += (y - mean_y) * (y - mean_y);
  }

  DecayFit fit;
  fit.K = std::exp(intercept);
  fit.beta = -slope;
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot)
                               : (ss_res <= 1e-24 ? 1.0 : 0.0);
  fit.window_lo = t_lo;
  fit.window_hi = t_hi;
  return fit;
}

double predicted_rate(double beta2, double p, std::optional<double> q) {
  if (!(beta2 > 0.0)) throw std::invalid_argument("predicted_rate: beta2 > 0");
  if (!q) {
    if (!(p >= 2.0)) throw std::invalid_argument("predicted_rate: p >= 2");
    return 2.0 * beta2 / p;
  }
  if (!(p > 2.0))
    throw std::invalid_argument("predicted_rate: p > 2 when q is given");
  if (!(*q >= 2.0 && *q < p))
    throw std::invalid_argument("predicted_rate: need 2 <= q < p");
  return beta2 * 2.0 * (p - *q) / (*q * (p - 2.0));
}

namespace {

// Computable shadow of the interpolation step: on a probability domain,
// ||f||_p <= ||f||_2^{2/p} ||f||_inf^{1-2/p}.
bool hoelder_ok(const Grid& g, const Eigen::VectorXd& vals, double p,
                double& excess) {
  GridFn f{g, vals, false};
  const double lhs = lp_norm(f, p);
  const double inf = std::numeric_limits<double>::infinity();
  const double rhs = std::pow(lp_norm(f, 2.0), 2.0 / p) *
                     std::pow(lp_norm(f, inf), 1.0 - 2.0 / p);
  if (rhs == 0.0) {
    excess = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return lhs == 0.0;
  }
  excess = lhs / rhs - 1.0;
  return lhs <= rhs * (1.0 + 1e-8);
}

}  // namespace

InterpReport interp_consistency(const Trajectory& traj, double p, double fit_lo,
                                double fit_hi) {
  if (!(p > 2.0) || std::isinf(p))
    throw std::invalid_argument("interp_consistency: p in (2, inf) required");

  InterpReport report;
  std::vector<std::pair<double, double>> h2_series, hp_series;
  for (const auto& s : traj.states) {
    double excess = 0.0;
    if (!hoelder_ok(s.z.grid, state_zx(s), p, excess))
      ++report.hoelder_violations;
    report.max_hoelder_excess = std::max(report.max_hoelder_excess, excess);
    if (!hoelder_ok(s.v.grid, s.v.values, p, excess))
      ++report.hoelder_violations;
    report.max_hoelder_excess = std::max(report.max_hoelder_excess, excess);
    h2_series.emplace_back(s.t, hp_norm(s, 2.0));
    hp_series.emplace_back(s.t, hp_norm(s, p));
  }
  report.fit2 = fit_decay(h2_series, fit_lo, fit_hi);
  report.fitp = fit_decay(hp_series, fit_lo, fit_hi);
  report.predicted = predicted_rate(report.fit2.beta, p);
  report.rate_ok = report.fitp.beta >= 0.9 * report.predicted;
  return report;
}

void scale_to_hinf(GridFn& z0, GridFn& z1, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("scale_to_hinf: R > 0");
  WaveState s{0.0, z0, z1};
  const double h = hp_norm(s, std::numeric_limits<double>::infinity());
  if (h <= 0.0)
    throw std::invalid_argument("scale_to_hinf: data has zero H_infty norm");
  z0.values *= R / h;
  z1.values *= R / h;
}

std::vector<SweepRow> semi_global_sweep(const SweepScenario& scenario,
                                        const std::vector<double>& R_list) {
  for (std::size_t i = 0; i < R_list.size(); ++i) {
    if (!(R_list[i] > 0.0))
      throw std::invalid_argument("semi_global_sweep: R values must be > 0");
    if (i > 0 && !(R_list[i] > R_list[i - 1]))
      throw std::invalid_argument("semi_global_sweep: R_list must increase");
  }

  std::vector<SweepRow> rows;
  for (const double R : R_list) {
    GridFn z0 = scenario.z0, z1 = scenario.z1;
    scale_to_hinf(z0, z1, R);
    const SectorBounds sec =
        sector_bounds(scenario.damping, R, SectorMode::quotient);
    Trajectory traj;
    try {
      traj = solve(z0, z1, scenario.damping, scenario.profile, scenario.t_end,
                   scenario.sample_dt, scenario.solver);
    } catch (const SolverError& e) {
      throw SolverError("sweep row R=" + std::to_string(R) + ": " + e.what());
    }
    std::vector<std::pair<double, double>> h2;
    for (const auto& s : traj.states) h2.emplace_back(s.t, hp_norm(s, 2.0));
    const DecayFit fit = fit_decay(h2, scenario.fit_lo, scenario.fit_hi);
    rows.push_back({R, fit.K, fit.beta, sec.d0, sec.d1, fit.r_squared});
  }
  return rows;
}

InftyReport thm_infty_scenario(const GridFn& z0, const GridFn& z1,
                               const DampingSpec& damping,
                               const DampingProfile& profile, double t_end,
                               double sample_dt, double fit_lo, double fit_hi,
                               const CharSolverConfig& config) {
  if (!damping.monotone)
    throw HypothesisError("thm_infty_scenario: damping must be monotone");
  if (!damping.linear_bound_m)
    throw HypothesisError(
        "thm_infty_scenario: damping must be linearly bounded (m set)");
  if (!profile.a1)
    throw HypothesisError("thm_infty_scenario: profile needs the a1 bound");

  // boundary-flat derivatives, read at x in {0,1}
  const auto check_flat = [&](const GridFn& f, const char* who) {
    const Eigen::VectorXd d = finite_diff(f);
    const double scale = d.cwiseAbs().maxCoeff();
    const double tol = 0.05 * scale + 1e-12;
    if (std::abs(d[0]) > tol || std::abs(d[f.grid.n]) > tol)
      throw HypothesisError(std::string("thm_infty_scenario: ") + who +
                            " must have vanishing derivative at the boundary");
  };
  check_flat(z0, "z0");
  if (z1.values.cwiseAbs().maxCoeff() > 0.0) check_flat(z1, "z1");

  const double m = *damping.linear_bound_m;
  const double a1 = *profile.a1;

  Trajectory traj = solve(z0, z1, damping, profile, t_end, sample_dt, config);

  // u = z_t: u_x by space differences, u_t by time differences of v
  const int n = z0.grid.n;
  const Grid g = z0.grid;
  const std::size_t ns = traj.states.size();
  std::vector<std::pair<double, double>> u_series, base_series, w_series,
      hinf_series;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ns; ++k) {
    const auto& s = traj.states[k];
    base_series.emplace_back(s.t, hp_norm(s, 2.0));
    hinf_series.emplace_back(s.t, hp_norm(s, inf));
    w_series.emplace_back(s.t, dp_norm(s, 2.0));

    GridFn ux{g, finite_diff(s.v), false};
    Eigen::VectorXd ut(n + 1);
    if (ns < 2) {
      ut.setZero();
    } else if (k == 0) {
      ut = (traj.states[1].v.values - s.v.values) / traj.sample_dt;
    } else if (k + 1 == ns) {
      ut = (s.v.values - traj.states[k - 1].v.values) / traj.sample_dt;
    } else {
      ut = (traj.states[k + 1].v.values - traj.states[k - 1].v.values) /
           (2.0 * traj.sample_dt);
    }
    GridFn utf{g, ut, false};
    u_series.emplace_back(s.t, lp_norm(ux, 2.0) + lp_norm(utf, 2.0));
  }

  InftyReport report;
  report.fit_u = fit_decay(u_series, fit_lo, fit_hi);
  report.fit_base = fit_decay(base_series, fit_lo, fit_hi);
  report.fit_w = fit_decay(w_series, fit_lo, fit_hi);

  const WaveState s0{0.0, z0, z1};
  report.d2_norm0 = dp_norm(s0, 2.0);
  const double h2_norm0 = hp_norm(s0, 2.0);
  report.K1 = report.fit_u.K / report.d2_norm0;
  report.K2 = report.fit_base.K / h2_norm0;

  // the Duhamel combination needs beta1 < beta2; lowering beta1 keeps the
  // envelope an upper bound
  const double beta2 = report.fit_base.beta;
  report.beta1_used = std::min(report.fit_u.beta, 0.9 * beta2);
  if (!(report.beta1_used > 0.0))
    throw HypothesisError(
        "thm_infty_scenario: measured decay rate is not positive");
  report.envelope_coeff =
      2.0 * report.K1 + report.K2 * m * a1 / (beta2 - report.beta1_used);

  for (const auto& [t, h] : hinf_series) {
    const double env = report.envelope_coeff *
                       std::exp(-report.beta1_used * t) * report.d2_norm0;
    if (env > 0.0)
      report.max_envelope_ratio = std::max(report.max_envelope_ratio, h / env);
    if (h > env * 1.1) ++report.envelope_violations;
  }
  report.passed = report.envelope_violations == 0 && report.fit_u.beta > 0.0;
  return report;
}

}  // namespace lpwave
