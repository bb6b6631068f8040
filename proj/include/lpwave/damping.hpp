#ifndef LPWAVE_DAMPING_HPP
#define LPWAVE_DAMPING_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lpwave {

/// A scalar damping nonlinearity: odd, locally Lipschitz, sign-definite,
/// differentiable at 0 with sigma'(0) = c1 > 0. `monotone` and
/// `linear_bound_m` are optional declared properties that the validator
/// probes; `lipschitz_on` maps a radius r to a Lipschitz constant of sigma
/// on [-r, r].
struct DampingSpec {
  std::string name;
  std::function<double(double)> sigma;
  std::function<double(double)> sigma_prime;
  double c1 = 0.0;
  bool monotone = false;
  std::optional<double> linear_bound_m;
  std::function<double(double)> lipschitz_on;
};

enum class SectorMode { quotient, derivative };

/// Sector bounds d0 <= sigma(xi)/xi <= d1 (or extrema of sigma') over
/// [-2R, 2R], with the quotient at 0 taken as c1. `nonpositive_d0` is set
/// when d0 <= 0 in quotient mode, in which case the decay certificates do
/// not apply.
struct SectorBounds {
  double d0 = 0.0;
  double d1 = 0.0;
  double radius_R = 0.0;
  SectorMode mode = SectorMode::quotient;
  bool nonpositive_d0 = false;
};

struct DampingViolation {
  std::string property;  // "odd", "sign", "zero", "derivative", "monotone",
                         // "linear_bound", "c1_positive"
  double point = 0.0;
  double value = 0.0;
};

struct ValidationReport {
  bool passed = false;
  std::vector<DampingViolation> violations;
};

/// sigma(s)/s for s != 0, c1 at s = 0. Throws on non-finite sigma(s).
double eval_quotient(const DampingSpec& spec, double s);

/// Probes oddness, the sign condition sigma(s)s > 0, sigma(0) = 0,
/// c1 > 0 and finite-difference agreement of sigma_prime near 0, plus the
/// declared monotonicity and linear bound, on a symmetric grid of `samples`
/// points over [-radius, radius]. Failures are reported, never thrown.
ValidationReport validate_damping(const DampingSpec& spec, double radius,
                                  int samples);

/// Extrema of the quotient (or of sigma') over [-2R, 2R] by adaptive grid
/// refinement: 2^12 points doubled until both bounds are stable to relative
/// 1e-6. The point s = 0 always contributes c1 in quotient mode.
SectorBounds sector_bounds(const DampingSpec& spec, double radius_R,
                           SectorMode mode);

/// Lipschitz constant estimate by finite differences on a fine grid over
/// [-r, r]; used as the default `lipschitz_on` for catalog entries without
/// a closed form.
double estimate_lipschitz(const std::function<double(double)>& sigma,
                          double radius);

// Built-in catalog ------------------------------------------------------

/// sat(s): s for |s| <= 1, sign(s) otherwise.
DampingSpec make_saturation();

/// sigma(s) = k*s.
DampingSpec make_linear(double k);

/// sat(s/4 + coeff*sin(10 s)). The published coefficient is -1/30, which
/// makes sigma'(0) = -1/12 < 0 and breaks the sign condition near 0 (the
/// validator reports it). coeff = +1/30 gives a genuinely nonmonotone
/// damping that passes validation.
DampingSpec make_sat_sine(double coeff);

/// Smooth saturation tanh(s).
DampingSpec make_tanh();

/// Representative of the power-derivative family with k0 = k1 = 1, r = 2:
/// sigma(s) = s|s|^2/3, so sigma'(s) = |s|^2. Note sigma'(0) = 0, so the
/// c1 > 0 requirement fails and the validator reports it.
DampingSpec make_power(double r);

/// Representative of the log-quotient family with c1 = c2 = 1, k = 1,
/// q = 1, m = 0: sigma(s) = s / log(2 + |s|). Monotone, linearly bounded.
DampingSpec make_loglin();

/// Registry lookup used by the CLI: known names are "saturation", "linear",
/// "sat_sine", "sat_sine_stable", "tanh", "power", "loglin". Parameters:
/// linear accepts k; sat_sine accepts coeff; power accepts r.
std::optional<DampingSpec> damping_by_name(
    const std::string& name, const std::map<std::string, double>& params);

}  // namespace lpwave

#endif
