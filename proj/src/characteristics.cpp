#include "lpwave/characteristics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lpwave/errors.hpp"

namespace lpwave {

namespace {

// Derivative of the odd 2-periodic extension sampled at the nodes of
// [0,1]: centered differences across the extension, so the boundary values
// come out as z(dx)/dx and -z(1-dx)/dx. The result extends evenly.
Eigen::VectorXd extension_derivative(const GridFn& z) {
  const int n = z.grid.n;
  const double inv2dx = 0.5 * n;
  Eigen::VectorXd d(n + 1);
  for (int j = 0; j <= n; ++j)
    d[j] = (odd_ext_node(z, j + 1) - odd_ext_node(z, j - 1)) * inv2dx;
  return d;
}

}  // namespace

WaveState dalembert_homogeneous(const GridFn& z0, const GridFn& z1, double t) {
  require_dirichlet(z0, "dalembert_homogeneous");
  require_dirichlet(z1, "dalembert_homogeneous");
  if (z0.grid != z1.grid)
    throw std::invalid_argument("dalembert_homogeneous: grids differ");
  if (!(t >= 0.0))
    throw std::invalid_argument("dalembert_homogeneous: t >= 0 required");

  const Grid g = z0.grid;
  GridFn d0;
  d0.grid = g;
  d0.values = extension_derivative(z0);

  WaveState out;
  out.t = t;
  out.z = GridFn::zero(g, true);
  out.v = GridFn::zero(g, true);
  for (int j = 0; j <= g.n; ++j) {
    const double x = g.node(j);
    out.z.values[j] =
        0.5 * (extend_odd_periodic(z0, x + t) + extend_odd_periodic(z0, x - t)) +
        0.5 * integrate_odd_periodic(z1, x - t, x + t);
    out.v.values[j] =
        0.5 * (extend_even_periodic(d0, x + t) - extend_even_periodic(d0, x - t)) +
        0.5 * (extend_odd_periodic(z1, x + t) + extend_odd_periodic(z1, x - t));
  }
  out.z.values[0] = out.z.values[g.n] = 0.0;
  out.v.values[0] = out.v.values[g.n] = 0.0;
  return out;
}

namespace {

struct WindowResult {
  Eigen::MatrixXd y;       // (Nw+1) x (n+1) converged velocity iterate
  Eigen::MatrixXd q_ext;   // (Nw+1) x wid extended a*sigma(y); empty undamped
  double max_abs_y = 0.0;
  PicardWindowStats stats;
};

// Fills ext[m+off] for m in [-off, n+off] with the 2-periodic odd (or even)
// extension of base[0..n].
template <typename Dst, typename Src>
void fill_ext_row(Dst&& ext, const Src& base, int n, int off, bool odd) {
  const long long p = 2LL * n;
  for (int m = -off; m <= n + off; ++m) {
    long long r = (m % p + p) % p;
    ext(m + off) = r <= n ? base(static_cast<int>(r))
                          : (odd ? -base(static_cast<int>(p - r))
                                 : base(static_cast<int>(p - r)));
  }
}

// One Picard window: iterate y <- Phi_T(y) until the sup increment falls
// below tol. `rho` is the radius on which the Lipschitz constant behind the
// window length was estimated; the caller re-runs with a larger radius if
// the iterates escape it.
WindowResult run_window(const Eigen::VectorXd& z_cur,
                        const Eigen::VectorXd& v_cur, const DampingSpec& damping,
                        const DampingProfile& profile, int n, long long nw,
                        const CharSolverConfig& cfg, int window_index,
                        double t_start) {
  const double dx = 1.0 / n;
  const int off = static_cast<int>(nw) + 1;      // extended index offset
  const int wid = n + 2 * off + 1;               // m in [-off, n+off]
  const int nwi = static_cast<int>(nw);
  const bool damped = profile.a_inf > 0.0;

  GridFn zfn{{n}, z_cur, true}, vfn{{n}, v_cur, true};

  // extended data arrays
  Eigen::VectorXd z0e(wid), z1e(wid), ae(wid);
  for (int m = -off; m <= n + off; ++m) {
    z0e[m + off] = odd_ext_node(zfn, m);
    z1e[m + off] = odd_ext_node(vfn, m);
    ae[m + off] = even_ext_node(profile.a, m);
  }
  Eigen::VectorXd z0p(wid);
  z0p[0] = z0p[wid - 1] = 0.0;
  for (int m = 1; m + 1 < wid; ++m)
    z0p[m] = (z0e[m + 1] - z0e[m - 1]) * (0.5 / dx);

  // homogeneous part of the velocity formula
  Eigen::MatrixXd hv(nwi + 1, n + 1);
  for (int k = 0; k <= nwi; ++k)
    for (int j = 0; j <= n; ++j)
      hv(k, j) = 0.5 * (z0p[j + k + off] - z0p[j - k + off]) +
                 0.5 * (z1e[j + k + off] + z1e[j - k + off]);

  WindowResult res;
  res.y = Eigen::MatrixXd::Zero(nwi + 1, n + 1);
  for (int k = 0; k <= nwi; ++k) res.y.row(k) = v_cur.transpose();
  if (damped) res.q_ext = Eigen::MatrixXd::Zero(nwi + 1, wid);

  auto& st = res.stats;
  st.index = window_index;
  st.t_start = t_start;
  st.length = nw * dx;
  const double y0_sup = v_cur.cwiseAbs().maxCoeff();

  // q = a * sigma(y) on [0,n], odd-extended row by row
  Eigen::RowVectorXd qrow(n + 1);
  auto build_q = [&]() {
    for (int k = 0; k <= nwi; ++k) {
      for (int j = 0; j <= n; ++j)
        qrow[j] = profile.a.values[j] * damping.sigma(res.y(k, j));
      fill_ext_row(res.q_ext.row(k), qrow, n, off, /*odd=*/true);
    }
  };

  Eigen::MatrixXd y_new(nwi + 1, n + 1);
  Eigen::VectorXd rdiag(wid), ldiag(wid);
  double prev_increment = std::numeric_limits<double>::infinity();
  int grow_count = 0;

  for (int iter = 1; iter <= cfg.picard_max_iter; ++iter) {
    if (damped) build_q();

    y_new.row(0) = hv.row(0);
    if (!damped) {
      for (int k = 1; k <= nwi; ++k) y_new.row(k) = hv.row(k);
    } else if (cfg.pairing == SourcePairing::matched) {
      rdiag.setZero();
      ldiag.setZero();
      for (int k = 1; k <= nwi; ++k) {
        // right-going diagonals c = j-k, left-going d = j+k
        for (int c = -nwi; c <= n; ++c)
          rdiag[c + off] += 0.5 * dx * (res.q_ext(k - 1, c + k - 1 + off) +
                                        res.q_ext(k, c + k + off));
        for (int d = 0; d <= n + nwi; ++d)
          ldiag[d + off] += 0.5 * dx * (res.q_ext(k - 1, d - k + 1 + off) +
                                        res.q_ext(k, d - k + off));
        for (int j = 0; j <= n; ++j)
          y_new(k, j) =
              hv(k, j) - 0.5 * (rdiag[j - k + off] + ldiag[j + k + off]);
        y_new(k, 0) = y_new(k, n) = 0.0;
      }
    } else {
      // crossed pairing: the coefficient argument is swapped between the
      // two characteristic feet. Diagnostic mode, direct evaluation.
      Eigen::MatrixXd ye(nwi + 1, wid);
      for (int k = 0; k <= nwi; ++k)
        fill_ext_row(ye.row(k), res.y.row(k), n, off, /*odd=*/true);
      for (int k = 1; k <= nwi; ++k) {
        for (int j = 0; j <= n; ++j) {
          double acc = 0.0;
          for (int i = 0; i <= k; ++i) {
            const int right = j + (k - i) + off;
            const int left = j - (k - i) + off;
            const double w = (i == 0 || i == k) ? 0.5 * dx : dx;
            acc += w * (ae[left] * damping.sigma(ye(i, right)) +
                        ae[right] * damping.sigma(ye(i, left)));
          }
          y_new(k, j) = hv(k, j) - 0.5 * acc;
        }
        y_new(k, 0) = y_new(k, n) = 0.0;
      }
    }

    const double increment = (y_new - res.y).cwiseAbs().maxCoeff();
    res.y.swap(y_new);
    ++st.iterations;

    if (iter == 1) {
      const double phi_sup = res.y.cwiseAbs().maxCoeff();
      st.ball_radius = 2.0 * (phi_sup + y0_sup) * (1.0 + cfg.ball_margin);
    }
    double ball_dist = 0.0;
    for (int k = 0; k <= nwi; ++k)
      ball_dist = std::max(
          ball_dist,
          (res.y.row(k).transpose() - v_cur).cwiseAbs().maxCoeff());
    st.max_ball_dist = std::max(st.max_ball_dist, ball_dist);

    if (std::isfinite(prev_increment) &&
        prev_increment > std::max(10.0 * cfg.picard_tol, 1e-14))
      st.max_ratio = std::max(st.max_ratio, increment / prev_increment);

    if (!std::isfinite(increment))
      throw SolverError("picard window " + std::to_string(window_index) +
                        " (t=" + std::to_string(t_start) +
                        "): non-finite iterate");
    if (increment > prev_increment) {
      if (++grow_count >= 3)
        throw SolverError("picard window " + std::to_string(window_index) +
                          " (t=" + std::to_string(t_start) +
                          "): increments grew for 3 consecutive iterations");
    } else {
      grow_count = 0;
    }

    st.final_increment = increment;
    prev_increment = increment;
    if (increment <= cfg.picard_tol) {
      if (damped) build_q();  // refresh the source with the converged y
      res.max_abs_y = res.y.cwiseAbs().maxCoeff();
      return res;
    }
  }
  throw SolverError("picard window " + std::to_string(window_index) +
                    " (t=" + std::to_string(t_start) + "): " +
                    std::to_string(cfg.picard_max_iter) +
                    " iterations exceeded, last increment " +
                    std::to_string(prev_increment));
}

}  // namespace

Trajectory solve(const GridFn& z0, const GridFn& z1, const DampingSpec& damping,
                 const DampingProfile& profile, double t_end, double sample_dt,
                 const CharSolverConfig& config) {
  require_dirichlet(z0, "solve");
  require_dirichlet(z1, "solve");
  if (z0.grid != z1.grid) throw std::invalid_argument("solve: grids differ");
  if (z0.grid != profile.a.grid)
    throw std::invalid_argument("solve: profile grid differs from data grid");
  if (!(t_end > 0.0)) throw std::invalid_argument("solve: t_end > 0 required");
  if (!(sample_dt > 0.0))
    throw std::invalid_argument("solve: sample_dt > 0 required");
  if (config.grid_n != 0 && config.grid_n != z0.grid.n)
    throw std::invalid_argument("solve: config.grid_n does not match data");

  const int n = z0.grid.n;
  const double dx = 1.0 / n;
  const long long stride = std::max(1LL, std::llround(sample_dt / dx));
  const long long total_steps =
      static_cast<long long>(std::ceil(t_end / dx - 1e-9));

  Trajectory traj;
  traj.sample_dt = stride * dx;
  traj.states.push_back({0.0, z0, z1});
  traj.states.back().v.dirichlet = true;

  Eigen::VectorXd z_cur = z0.values, v_cur = z1.values;
  long long step_now = 0;
  int window_index = 0;

  while (step_now < total_steps) {
    GridFn zfn{{n}, z_cur, true};
    const double hb = extension_derivative(zfn).cwiseAbs().maxCoeff() +
                      v_cur.cwiseAbs().maxCoeff();
    double rho = 2.0 * (hb + 2.0 * v_cur.cwiseAbs().maxCoeff()) + 1.0;

    WindowResult win;
    int retries = 0;
    long long nw = 0;
    for (;;) {
      const double lip = damping.lipschitz_on(rho);
      const double contraction = profile.a_inf * lip;
      double t_max = contraction > 0.0
                         ? 1.0 / (2.0 * contraction)
                         : std::numeric_limits<double>::infinity();
      if (config.window_T) t_max = std::min(t_max, *config.window_T);
      const long long steps_left = total_steps - step_now;
      long long cap = steps_left;
      if (std::isfinite(t_max))
        cap = std::max(1LL, static_cast<long long>(std::floor(t_max / dx + 1e-9)));
      nw = std::min(steps_left, cap);
      win = run_window(z_cur, v_cur, damping, profile, n, nw, config,
                       window_index, step_now * dx);
      win.stats.contraction_bound = contraction * nw * dx;
      win.stats.retries = retries;
      if (win.max_abs_y <= rho) break;
      rho = 2.0 * win.max_abs_y + 1.0;
      if (++retries > 8)
        throw SolverError("solve: window " + std::to_string(window_index) +
                          ": Lipschitz radius did not stabilize");
    }

    // reconstruct z at the levels we need: sampled steps plus window end
    const int nwi = static_cast<int>(nw);
    const int off = nwi + 1;
    const int wid = n + 2 * off + 1;
    GridFn vfn{{n}, v_cur, true};
    Eigen::VectorXd z0e(wid), pz1(wid);
    for (int m = -off; m <= n + off; ++m) z0e[m + off] = odd_ext_node(zfn, m);
    pz1[0] = 0.0;
    {
      double prev = odd_ext_node(vfn, -off);
      for (int m = -off + 1; m <= n + off; ++m) {
        const double cur = odd_ext_node(vfn, m);
        pz1[m + off] = pz1[m + off - 1] + 0.5 * dx * (prev + cur);
        prev = cur;
      }
    }
    const bool damped = profile.a_inf > 0.0;
    Eigen::MatrixXd pq;
    if (damped) {
      pq = Eigen::MatrixXd::Zero(nwi + 1, wid);
      for (int k = 0; k <= nwi; ++k)
        for (int m = 1; m < wid; ++m)
          pq(k, m) =
              pq(k, m - 1) + 0.5 * dx * (win.q_ext(k, m - 1) + win.q_ext(k, m));
    }

    auto reconstruct_z = [&](int k) {
      Eigen::VectorXd z(n + 1);
      for (int j = 0; j <= n; ++j) {
        double val = 0.5 * (z0e[j + k + off] + z0e[j - k + off]) +
                     0.5 * (pz1[j + k + off] - pz1[j - k + off]);
        if (damped) {
          double dsrc = 0.0;
          for (int i = 0; i < k; ++i) {
            const double inner =
                -(pq(i, j + (k - i) + off) - pq(i, j - (k - i) + off));
            dsrc += (i == 0 ? 0.5 * dx : dx) * inner;
          }
          val += 0.5 * dsrc;
        }
        z[j] = val;
      }
      z[0] = z[n] = 0.0;
      return z;
    };

    Eigen::VectorXd z_end = reconstruct_z(nwi);
    for (int k = 1; k <= nwi; ++k) {
      const long long g = step_now + k;
      if (g % stride == 0) {
        WaveState s;
        s.t = g * dx;
        s.z = GridFn{{n}, k == nwi ? z_end : reconstruct_z(k), true};
        s.v = GridFn{{n}, win.y.row(k).transpose(), true};
        s.v.values[0] = s.v.values[n] = 0.0;
        traj.states.push_back(std::move(s));
      }
    }

    z_cur = std::move(z_end);
    v_cur = win.y.row(nwi).transpose();
    v_cur[0] = v_cur[n] = 0.0;
    traj.stats.windows.push_back(win.stats);
    step_now += nw;
    ++window_index;
  }

  return traj;
}

}  // namespace lpwave
