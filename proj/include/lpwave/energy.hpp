#ifndef LPWAVE_ENERGY_HPP
#define LPWAVE_ENERGY_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpwave/grid.hpp"
#include "lpwave/wave.hpp"

namespace lpwave {

/// An even convex weight F for the Haraux functional
/// Phi = int F(z_t + z_x) + F(z_t - z_x) dx.
struct ConvexWeight {
  std::string id;
  std::function<double(double)> F;

  /// F(s) = |s|^p / p, p >= 1.
  static ConvexWeight power_p(double p);
  /// F(s) = Pos(|s| - c)^2 with Pos(s) = max(s, 0); kills the functional
  /// whenever |z_t +- z_x| stays below c.
  static ConvexWeight pos_square(double c);
  static ConvexWeight custom(std::string id, std::function<double(double)> F);
};

/// Probes F for evenness, midpoint convexity and minimality at 0 on a
/// symmetric grid; throws std::invalid_argument on failure.
void validate_weight(const ConvexWeight& w, double radius, int samples);

/// Node samples of z_x by centered differences (one-sided at the boundary).
Eigen::VectorXd state_zx(const WaveState& state);

/// ||z_x||_p + ||z_t||_p. Requires p in [2, inf].
double hp_norm(const WaveState& state, double p);

/// ||z_xx||_p + ||z_tx||_p via second/mixed finite differences.
/// Requires p in [2, inf].
double dp_norm(const WaveState& state, double p);

/// Trapezoid quadrature of F(z_t + z_x) + F(z_t - z_x) over [0,1].
double haraux_phi(const WaveState& state, const ConvexWeight& F);

/// (1/2) int z_t^2 + z_x^2 dx.
double classical_energy(const WaveState& state);

struct MonotoneViolation {
  std::size_t index = 0;  // k with value_{k+1} above the slack envelope
  double t = 0.0;
  double value = 0.0;
  double next_value = 0.0;
};

/// Reports every k with value_{k+1} > value_k*(1+rel_slack) + abs_slack.
/// Times must be strictly increasing.
std::vector<MonotoneViolation> check_monotone(
    const std::vector<std::pair<double, double>>& series, double rel_slack,
    double abs_slack);

/// One row of the fixed-header trajectory norms CSV.
struct EnergySample {
  double t = 0.0;
  double h2 = 0.0, h4 = 0.0, h8 = 0.0, hinf = 0.0;
  double phi2 = 0.0, phi4 = 0.0, phi8 = 0.0;
  double classical = 0.0;
  std::optional<double> dp2;
};

EnergySample energy_sample(const WaveState& state, bool with_dp2 = false);

inline constexpr const char* kEnergyCsvHeader =
    "t,h2,h4,h8,hinf,phi2,phi4,phi8,classical";

/// Fixed-header norms CSV, one row per sampled state, 17 significant
/// digits, LF line endings.
void write_energy_csv(const Trajectory& traj, std::ostream& os);

}  // namespace lpwave

#endif
