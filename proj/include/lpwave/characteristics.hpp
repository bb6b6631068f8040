#ifndef LPWAVE_CHARACTERISTICS_HPP
#define LPWAVE_CHARACTERISTICS_HPP

#include <optional>

#include "lpwave/damping.hpp"
#include "lpwave/wave.hpp"

namespace lpwave {

/// How the damping coefficient is paired with the velocity argument inside
/// the source integral of the fixed-point map. `matched` evaluates both at
/// the same characteristic foot (this is what reproduces the finite
/// difference oracle); `crossed` swaps the coefficient arguments between
/// the two feet. The two coincide for spatially constant coefficients.
enum class SourcePairing { matched, crossed };

struct CharSolverConfig {
  int grid_n = 0;  // 0 = take from the data; otherwise must match
  std::optional<double> window_T;
  double picard_tol = 1e-12;
  int picard_max_iter = 200;
  double ball_margin = 0.1;
  SourcePairing pairing = SourcePairing::matched;
};

/// Solution of z_tt = z_xx with Dirichlet conditions at an arbitrary time
/// t >= 0: z from the reflection formula, z_t from its time derivative.
/// Exact for the piecewise-linear interpolant of the data; node queries at
/// t that is a multiple of dx involve no interpolation at all.
WaveState dalembert_homogeneous(const GridFn& z0, const GridFn& z1, double t);

/// Advances z_tt = z_xx - a(x) sigma(z_t) by windowed Picard iteration on
/// y = z_t: within each window of length T (chosen so that
/// a_inf * Lip(sigma) * T <= 1/2), iterate the reflection-formula map until
/// the sup-norm increment falls below picard_tol, then reconstruct z with
/// the converged source. dt = dx internally, so characteristic feet always
/// land on grid nodes. States are sampled every sample_dt (snapped to the
/// step grid).
///
/// Throws SolverError when increments grow for three consecutive
/// iterations or the iteration cap is exceeded, naming the window.
Trajectory solve(const GridFn& z0, const GridFn& z1, const DampingSpec& damping,
                 const DampingProfile& profile, double t_end, double sample_dt,
                 const CharSolverConfig& config = {});

}  // namespace lpwave

#endif
