#ifndef LPWAVE_ANALYSIS_HPP
#define LPWAVE_ANALYSIS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "lpwave/characteristics.hpp"
#include "lpwave/damping.hpp"
#include "lpwave/wave.hpp"

namespace lpwave {

/// Least-squares fit of value ~ K exp(-beta t) on log(value) over a time
/// window.
struct DecayFit {
  double K = 0.0;
  double beta = 0.0;
  double r_squared = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Requires at least 5 samples inside [t_lo, t_hi], all with value > 0.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& series,
                   double t_lo, double t_hi);

/// Decay rate implied for H_p by an H_2 rate beta2: 2*beta2/p without q
/// (interpolation against the bounded H_infty trajectory), or
/// beta2 * 2(p-q)/(q(p-2)) for the H_q rate interpolated between H_2 and a
/// bounded H_p trajectory. Requires beta2 > 0, p >= 2 (p > 2 when q is
/// given) and 2 <= q < p.
double predicted_rate(double beta2, double p, std::optional<double> q = {});

struct InterpReport {
  int hoelder_violations = 0;
  double max_hoelder_excess = 0.0;  // worst lhs/rhs - 1 over all samples
  DecayFit fit2;
  DecayFit fitp;
  double predicted = 0.0;  // predicted_rate(fit2.beta, p)
  bool rate_ok = false;    // fitp.beta >= 0.9 * predicted
};

/// At every sample checks ||f||_p <= ||f||_2^{2/p} ||f||_inf^{1-2/p}
/// (1 + 1e-8) for f in {z_x, z_t}, and compares the fitted H_p rate
/// against predicted_rate(beta_2, p) with 10% slack.
InterpReport interp_consistency(const Trajectory& traj, double p, double fit_lo,
                                double fit_hi);

struct SweepRow {
  double R = 0.0;
  double K = 0.0;
  double beta = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
  double r_squared = 0.0;
};

/// A solver scenario reused across sweep rows; the initial data is rescaled
/// to H_infty norm R before each run.
struct SweepScenario {
  GridFn z0;
  GridFn z1;
  DampingSpec damping;
  DampingProfile profile;
  double t_end = 20.0;
  double sample_dt = 0.0625;
  double fit_lo = 5.0;
  double fit_hi = 20.0;
  CharSolverConfig solver;
};

/// For each R: scale the data, take the quotient sector bounds over
/// [-2R, 2R], run the solver and fit the H_2 decay. R_list must be
/// positive and increasing.
std::vector<SweepRow> semi_global_sweep(const SweepScenario& scenario,
                                        const std::vector<double>& R_list);

struct InftyReport {
  DecayFit fit_u;     // ||(u, u_t)||_{H_2} with u = z_t
  DecayFit fit_base;  // ||(z, z_t)||_{H_2}
  DecayFit fit_w;     // ||(w_x, w_t)||_2 with w = z_x (the D_2 series)
  double K1 = 0.0;    // fit_u.K / ||(z0,z1)||_{D_2}
  double K2 = 0.0;    // fit_base.K / ||(z0,z1)||_{H_2}
  double beta1_used = 0.0;
  double envelope_coeff = 0.0;  // 2 K1 + K2 m a1 / (beta2 - beta1_used)
  double d2_norm0 = 0.0;
  int envelope_violations = 0;
  double max_envelope_ratio = 0.0;  // max hinf(t) / envelope(t)
  bool passed = false;              // zero violations at 10% slack
};

/// The auxiliary-system scenario: requires a monotone, continuously
/// differentiable, linearly bounded damping (m set), a profile with a1
/// set, and boundary-flat data derivatives (z0' = z1' = 0 at x in {0,1}).
/// Runs the base system, forms u = z_t and w = z_x series by differencing,
/// fits their decay and checks the measured H_infty envelope
/// (2 K1 + K2 m a1/(beta2-beta1)) e^{-beta1 t} ||(z0,z1)||_{D_2}.
/// Throws HypothesisError when a hypothesis fails.
InftyReport thm_infty_scenario(const GridFn& z0, const GridFn& z1,
                               const DampingSpec& damping,
                               const DampingProfile& profile, double t_end,
                               double sample_dt, double fit_lo, double fit_hi,
                               const CharSolverConfig& config = {});

/// Scales (z0, z1) in place so that ||(z0,z1)||_{H_infty} = R.
void scale_to_hinf(GridFn& z0, GridFn& z1, double R);

}  // namespace lpwave

#endif
