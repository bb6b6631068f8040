#ifndef LPWAVE_LTV_HPP
#define LPWAVE_LTV_HPP

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "lpwave/wave.hpp"

namespace lpwave {

/// Finite-dimensional instance of dv/dt = (A - d(t) B B^T) v with a
/// dissipative A (A + A^T <= 0) and a scalar gain d(t) in [d0, d1].
struct LTVSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  std::function<double(double)> d;
  double d0 = 0.0;
  double d1 = 0.0;
};

/// (P, C, M) with P solving P A_{d0} + A_{d0}^T P = -C I and
/// M >= 2 (d1-d0)^2 ||B^T P||^2 / (C d0); certifies
/// V(v) = <P v, v> + M ||v||^2 decaying along every admissible d(t).
struct LyapunovCertificate {
  Eigen::MatrixXd P;
  double C = 0.0;
  double M = 0.0;
  double norm_P = 0.0;  // operator 2-norm of P
};

struct LtvValidation {
  double max_sym_eig = 0.0;    // largest eigenvalue of (A + A^T)/2
  bool dissipative = false;    // max_sym_eig <= 1e-10
  double max_real_part = 0.0;  // spectral abscissa of A - d0 B B^T
  bool hurwitz = false;
  std::vector<std::pair<double, double>> d_range_violations;  // (t, d(t))
  bool passed = false;
};

/// Probes the three system invariants: dissipativity of A, d(t) within
/// [d0, d1] on a uniform time grid, and A - d0 B B^T Hurwitz.
LtvValidation validate_ltv(const LTVSystem& sys, double t_end, int samples);

/// Unique symmetric positive definite P with P A + A^T P = -C I, obtained
/// by a direct solve of the vectorized Kronecker system
/// (A^T kron I + I kron A^T) vec(P) = -C vec(I).
/// Throws HypothesisError when A is not Hurwitz.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A_d0, double C);

/// Builds the certificate for `sys`: P from solve_lyapunov(A - d0 B B^T, C),
/// M = max(2 (d1-d0)^2 ||B^T P||_2^2 / (C d0), 1e-8 ||P||) -- the floor
/// keeps M > 0 when d1 = d0 degenerates the formula.
/// Throws HypothesisError when d0 <= 0.
LyapunovCertificate build_certificate(const LTVSystem& sys, double C);

/// Classical fourth-order one-step integration of the system; d is sampled
/// at the stage times. Returns (t_k, v_k) at every step.
std::vector<std::pair<double, Eigen::VectorXd>> simulate_ltv(
    const LTVSystem& sys, const Eigen::VectorXd& v0, double t_end, double dt);

struct DecayCheckRow {
  double t = 0.0;
  double V = 0.0;
  double bound = 0.0;   // envelope ((||P||+M)/M) exp(-C t/(2(||P||+M))) ||v0||^2
  double normsq = 0.0;  // ||v||^2
  bool derivative_violation = false;
  bool envelope_violation = false;
};

struct DecayCheck {
  std::vector<DecayCheckRow> rows;
  int derivative_violations = 0;
  int envelope_violations = 0;
  double slack_coefficient = 0.0;   // multiplies dt^2 ||v_k||^2
  double max_slack_fraction = 0.0;  // slack / ((C/2)||v_k||^2); < 1 keeps the
                                    // derivative check meaningful
  bool passed = false;
};

/// Checks, along a simulated trajectory, (i) the discrete derivative bound
/// [V(v_{k+1}) - V(v_k)]/dt <= -(C/2)||v_k||^2 + slack*dt^2*||v_k||^2 and
/// (ii) the explicit exponential envelope with relative slack 1e-6.
DecayCheck verify_decay(
    const LyapunovCertificate& cert, const LTVSystem& sys,
    const std::vector<std::pair<double, Eigen::VectorXd>>& traj);

/// Discretizes the damped wave operator on n cells in the energy
/// coordinates that make the conservative part exactly skew:
/// A = [[0, G], [-G, 0]] with G the symmetric square root of the 3-point
/// Dirichlet Laplacian (scaled 1/dx^2), and B = [0; diag(sqrt(a_j))] over
/// the n-1 interior nodes. State dimension 2(n-1).
LTVSystem discretize_wave(int n, const DampingProfile& profile, double d0,
                          double d1, std::function<double(double)> d);

/// CSV rows (t,V,bound,normsq,violation) with 17 significant digits.
void write_decay_csv(const DecayCheck& check, std::ostream& os);

}  // namespace lpwave

#endif
