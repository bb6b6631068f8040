#ifndef LPWAVE_FDM_HPP
#define LPWAVE_FDM_HPP

#include "lpwave/damping.hpp"
#include "lpwave/wave.hpp"

namespace lpwave {

/// Leapfrog oracle at unit CFL (dt = dx):
///   z^{k+1}_j = 2 z^k_j - z^{k-1}_j + (z^k_{j+1} - 2 z^k_j + z^k_{j-1})
///               - dt^2 a_j sigma(v^k_j),  v^k_j = (z^{k+1}_j - z^{k-1}_j)/(2dt),
/// first step from the Taylor expansion
///   z^1 = z^0 + dt z1 + (dt^2/2)(z0'' - a sigma(z1)).
/// The centered velocity keeps the scheme dissipative at unit CFL (the
/// backward difference is von Neumann unstable there); the resulting
/// per-node scalar equation is solved by fixed point.
/// Algorithmically independent of the characteristics solver; used for
/// cross-validation. Throws SolverError with the blow-up time when the
/// state becomes non-finite.
Trajectory fdm_solve(const GridFn& z0, const GridFn& z1,
                     const DampingSpec& damping, const DampingProfile& profile,
                     double t_end, double sample_dt);

/// The leapfrog-compatible discrete energy
///   (dx/2) sum_j [ ((z_next - z_cur)/dt)^2
///                  + D+(z_next)_j D+(z_cur)_j ]
/// with D+ the forward space difference; exactly conserved by the
/// undamped scheme at unit CFL.
double leapfrog_energy(const GridFn& z_cur, const GridFn& z_next);

}  // namespace lpwave

#endif
