#ifndef LPWAVE_WAVE_HPP
#define LPWAVE_WAVE_HPP

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "lpwave/grid.hpp"

namespace lpwave {

/// Spatial damping coefficient a(x) >= 0 with its sup bound a_inf and,
/// when available, an essential bound a1 on |a'|.
struct DampingProfile {
  GridFn a;
  double a_inf = 0.0;
  std::optional<double> a1;
  std::optional<std::pair<double, double>> support;

  static DampingProfile constant(Grid g, double value);
  /// Raised-cosine bump amp*cos^2(pi*(x-center)/width) on
  /// [center-width/2, center+width/2], zero outside. C^1 with
  /// |a'| <= amp*pi/width exactly.
  static DampingProfile bump(Grid g, double center, double width, double amp);
  /// Piecewise-linear interpolation of (x, value) pairs onto the grid.
  /// a1 is the maximum slope of the table.
  static DampingProfile from_table(
      Grid g, const std::vector<std::pair<double, double>>& table);
};

/// Throws if a has negative values, a_inf is not an upper bound, or the
/// declared a1 is exceeded by finite differences.
void validate_profile(const DampingProfile& profile);

/// The wave state (z, z_t) at one time instant, both on one grid.
struct WaveState {
  double t = 0.0;
  GridFn z;
  GridFn v;  // z_t
};

/// Per-window fixed-point diagnostics from the characteristics solver.
struct PicardWindowStats {
  int index = 0;
  double t_start = 0.0;
  double length = 0.0;
  int iterations = 0;
  double contraction_bound = 0.0;  // a_inf * Lip(sigma) * T
  double max_ratio = 0.0;          // max increment ratio observed
  double final_increment = 0.0;
  double ball_radius = 0.0;        // K
  double max_ball_dist = 0.0;      // max ||y_m - y_0||_sup over iterates
  int retries = 0;
};

struct SolveStats {
  std::vector<PicardWindowStats> windows;
};

/// Uniformly sampled states, strictly increasing in time.
struct Trajectory {
  std::vector<WaveState> states;
  double sample_dt = 0.0;
  SolveStats stats;
};

enum class TrajectoryCsvMode { nodes, norms };

/// nodes mode: header t,z0,...,zn with per-node z values per row.
/// norms mode: the fixed energy header (see energy.hpp / scenario.hpp).
void write_trajectory_csv(const Trajectory& traj, std::ostream& os,
                          TrajectoryCsvMode mode);

}  // namespace lpwave

#endif
