#include "lpwave/ltv.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "lpwave/errors.hpp"

namespace lpwave {

namespace {

double spectral_abscissa(const Eigen::MatrixXd& A) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff();
}

double operator_2norm(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues()(0);
}

}  // namespace

LtvValidation validate_ltv(const LTVSystem& sys, double t_end, int samples) {
  LtvValidation report;
  const Eigen::MatrixXd sym = 0.5 * (sys.A + sys.A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  report.max_sym_eig = es.eigenvalues().maxCoeff();
  report.dissipative = report.max_sym_eig <= 1e-10;

  const Eigen::MatrixXd a_d0 =
      sys.A - sys.d0 * sys.B * sys.B.transpose();
  report.max_real_part = spectral_abscissa(a_d0);
  report.hurwitz = report.max_real_part < 0.0;

  if (sys.d && samples > 0) {
    for (int i = 0; i <= samples; ++i) {
      const double t = t_end * i / samples;
      const double dt_val = sys.d(t);
      if (dt_val < sys.d0 - 1e-12 || dt_val > sys.d1 + 1e-12)
        report.d_range_violations.emplace_back(t, dt_val);
    }
  }
  report.passed = report.dissipative && report.hurwitz &&
                  report.d_range_violations.empty() && sys.d0 <= sys.d1;
  return report;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A_d0, double C) {
  if (A_d0.rows() != A_d0.cols())
    throw std::invalid_argument("solve_lyapunov: A must be square");
  if (!(C > 0.0)) throw std::invalid_argument("solve_lyapunov: C > 0 required");
  if (spectral_abscissa(A_d0) >= 0.0)
    throw HypothesisError(
        "solve_lyapunov: A - d0 BB^T is not Hurwitz, no certificate exists");

  const int n = static_cast<int>(A_d0.rows());
  const int nn = n * n;
  // vec(P A) = (A^T kron I) vec(P); vec(A^T P) = (I kron A^T) vec(P)
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nn, nn);
  const Eigen::MatrixXd At = A_d0.transpose();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r) K(i * n + r, j * n + r) += At(i, j);
    K.block(i * n, i * n, n, n) += At;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nn);
  for (int i = 0; i < n; ++i) rhs(i * n + i) = -C;

  const Eigen::VectorXd p = Eigen::PartialPivLU<Eigen::MatrixXd>(K).solve(rhs);
  Eigen::MatrixXd P = Eigen::Map<const Eigen::MatrixXd>(p.data(), n, n);
  // kill the asymmetric round-off part
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double s = 0.5 * (P(i, j) + P(j, i));
      P(i, j) = s;
      P(j, i) = s;
    }
  return P;
}

LyapunovCertificate build_certificate(const LTVSystem& sys, double C) {
  if (!(sys.d0 > 0.0))
    throw HypothesisError("build_certificate: d0 > 0 required");
  if (sys.d1 < sys.d0)
    throw HypothesisError("build_certificate: need d0 <= d1");

  LyapunovCertificate cert;
  const Eigen::MatrixXd a_d0 = sys.A - sys.d0 * sys.B * sys.B.transpose();
  cert.P = solve_lyapunov(a_d0, C);
  cert.C = C;
  cert.norm_P = operator_2norm(cert.P);
  const double btp = operator_2norm(sys.B.transpose() * cert.P);
  const double gap = sys.d1 - sys.d0;
  cert.M = std::max(2.0 * gap * gap * btp * btp / (C * sys.d0),
                    1e-8 * cert.norm_P);
  return cert;
}

std::vector<std::pair<double, Eigen::VectorXd>> simulate_ltv(
    const LTVSystem& sys, const Eigen::VectorXd& v0, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end > 0.0))
    throw std::invalid_argument("simulate_ltv: dt > 0 and t_end > 0 required");

  const Eigen::MatrixXd BBt = sys.B * sys.B.transpose();
  auto rhs = [&](double t, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return sys.A * v - sys.d(t) * (BBt * v);
  };

  std::vector<std::pair<double, Eigen::VectorXd>> out;
  const long long steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  out.reserve(steps + 1);
  Eigen::VectorXd v = v0;
  out.emplace_back(0.0, v);
  for (long long k = 0; k < steps; ++k) {
    const double t = k * dt;
    const Eigen::VectorXd k1 = rhs(t, v);
    const Eigen::VectorXd k2 = rhs(t + 0.5 * dt, v + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = rhs(t + 0.5 * dt, v + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = rhs(t + dt, v + dt * k3);
    v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!v.allFinite())
      throw SolverError("simulate_ltv: non-finite state at t=" +
                        std::to_string((k + 1) * dt));
    out.emplace_back((k + 1) * dt, v);
  }
  return out;
}

DecayCheck verify_decay(
    const LyapunovCertificate& cert, const LTVSystem& sys,
    const std::vector<std::pair<double, Eigen::VectorXd>>& traj) {
  DecayCheck check;
  if (traj.size() < 2) {
    check.passed = true;
    return check;
  }

  const double pm = cert.norm_P + cert.M;
  const double envelope_amp = pm / cert.M;
  const double rate = cert.C / (2.0 * pm);
  const double v0sq = traj.front().second.squaredNorm();

  // dt^2 slack coefficient from the system scales; covers the left-endpoint
  // quadrature error and the fourth-order integrator error
  const double a_norm = operator_2norm(sys.A);
  const double b_norm2 = operator_2norm(sys.B * sys.B.transpose());
  const double kappa = 1.0 + a_norm + sys.d1 * b_norm2;
  check.slack_coefficient = 10.0 * kappa * kappa;

  auto V = [&](const Eigen::VectorXd& v) {
    return v.dot(cert.P * v) + cert.M * v.squaredNorm();
  };

  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& [t, v] = traj[k];
    DecayCheckRow row;
    row.t = t;
    row.V = V(v);
    row.normsq = v.squaredNorm();
    row.bound = envelope_amp * std::exp(-rate * t) * v0sq;
    row.envelope_violation = row.normsq > row.bound * (1.0 + 1e-6);
    if (k + 1 < traj.size()) {
      const double dt = traj[k + 1].first - t;
      const double diff = (V(traj[k + 1].second) - row.V) / dt;
      const double slack = check.slack_coefficient * dt * dt * row.normsq;
      row.derivative_violation =
          diff > -(cert.C / 2.0) * row.normsq + slack;
      if (row.normsq > 0.0)
        check.max_slack_fraction = std::max(
            check.max_slack_fraction, slack / ((cert.C / 2.0) * row.normsq));
    }
    check.derivative_violations += row.derivative_violation ? 1 : 0;
    check.envelope_violations += row.envelope_violation ? 1 : 0;
    check.rows.push_back(row);
  }
  check.passed =
      check.derivative_violations == 0 && check.envelope_violations == 0;
  return check;
}

LTVSystem discretize_wave(int n, const DampingProfile& profile, double d0,
                          double d1, std::function<double(double)> d) {
  if (n < 2) throw std::invalid_argument("discretize_wave: n >= 2 required");
  if (profile.a.grid.n != n)
    throw std::invalid_argument("discretize_wave: profile grid must have n cells");

  const int m = n - 1;  // interior nodes
  const double dx2 = 1.0 / (static_cast<double>(n) * n);

  // -L = positive definite 3-point Dirichlet Laplacian, scaled 1/dx^2
  Eigen::MatrixXd negL = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    negL(i, i) = 2.0 / dx2;
    if (i > 0) negL(i, i - 1) = -1.0 / dx2;
    if (i + 1 < m) negL(i, i + 1) = -1.0 / dx2;
  }

  // symmetric square root G of -L
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(negL);
  Eigen::MatrixXd G = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double s = 0.5 * (G(i, j) + G(j, i));
      G(i, j) = s;
      G(j, i) = s;
    }

  LTVSystem sys;
  sys.A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  sys.A.topRightCorner(m, m) = G;
  sys.A.bottomLeftCorner(m, m) = -G;
  sys.B = Eigen::MatrixXd::Zero(2 * m, m);
  for (int i = 0; i < m; ++i)
    sys.B(m + i, i) = std::sqrt(profile.a.values[i + 1]);
  sys.d = std::move(d);
  sys.d0 = d0;
  sys.d1 = d1;
  return sys;
}

void write_decay_csv(const DecayCheck& check, std::ostream& os) {
  char buf[192];
  os << "t,V,bound,normsq,violation\n";
  for (const auto& r : check.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d\n", r.t, r.V,
                  r.bound, r.normsq,
                  (r.derivative_violation || r.envelope_violation) ? 1 : 0);
    os << buf;
  }
}

}  // namespace lpwave
