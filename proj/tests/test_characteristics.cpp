#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpwave/analysis.hpp"
#include "lpwave/characteristics.hpp"
#include "lpwave/energy.hpp"
#include "lpwave/errors.hpp"

using namespace lpwave;

namespace {

GridFn sine(int n, double k = 1.0) {
  return GridFn::sample(
      Grid{n}, [k](double x) { return std::sin(k * M_PI * x); }, true);
}

double sup_diff(const GridFn& a, const GridFn& b) {
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("characteristics") {

TEST_CASE("standing wave: z = sin(pi x) cos(pi t)") {
  const int n = 256;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});

  SUBCASE("quarter period: z vanishes, v = -pi sin(pi x)") {
    const WaveState s = dalembert_homogeneous(z0, z1, 0.5);
    for (int j = 0; j <= n; ++j) {
      CHECK(std::abs(s.z.values[j]) < 1e-12);
      // v from centered differences of the extension: O(dx^2)
      CHECK(std::abs(s.v.values[j] +
                     M_PI * std::sin(M_PI * s.z.grid.node(j))) < 2e-4);
    }
  }
  SUBCASE("time-2 periodicity is exact") {
    const WaveState s = dalembert_homogeneous(z0, z1, 2.0);
    CHECK(sup_diff(s.z, z0) < 1e-12);
    CHECK(s.v.values.cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("states at t and t+2 coincide") {
    for (double t : {0.3, 0.77, 1.4}) {
      const WaveState a = dalembert_homogeneous(z0, z1, t);
      const WaveState b = dalembert_homogeneous(z0, z1, t + 2.0);
      CHECK(sup_diff(a.z, b.z) < 1e-12);
      CHECK(sup_diff(a.v, b.v) < 1e-12);
    }
  }
}

TEST_CASE("velocity initial data: z = sin(pi x) sin(pi t) / pi") {
  const int n = 256;
  GridFn z0 = GridFn::zero(Grid{n}), z1 = sine(n);
  const double t = 0.5;
  const WaveState s = dalembert_homogeneous(z0, z1, t);
  for (int j = 0; j <= n; ++j) {
    const double x = s.z.grid.node(j);
    CHECK(std::abs(s.z.values[j] - std::sin(M_PI * x) / M_PI) < 2e-4);
  }
  // independent fine-grid quadrature oracle for the z1 integral
  for (int j : {32, 100, 200}) {
    const double x = s.z.grid.node(j);
    double acc = 0.0;
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
      const double u = x - t + 2.0 * t * (i + 0.5) / m;
      acc += std::sin(M_PI * u) * (2.0 * t / m);
    }
    CHECK(s.z.values[j] == doctest::Approx(0.5 * acc).epsilon(1e-5));
  }
  // v(0) must reproduce z1
  const WaveState s0 = dalembert_homogeneous(z0, z1, 0.0);
  CHECK(sup_diff(s0.v, z1) < 1e-12);
}

TEST_CASE("undamped solve matches the homogeneous formula at every sample") {
  const int n = 256;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  const DampingProfile off = DampingProfile::constant(Grid{n}, 0.0);
  const Trajectory traj =
      solve(z0, z1, make_saturation(), off, 2.0, 0.0625, {});
  REQUIRE(traj.states.size() == 33);
  for (const auto& s : traj.states) {
    const WaveState ref = dalembert_homogeneous(z0, z1, s.t);
    CHECK(sup_diff(s.z, ref.z) < 1e-8);
    CHECK(sup_diff(s.v, ref.v) < 1e-8);
  }
}

TEST_CASE("zero data stays identically zero") {
  const int n = 64;
  GridFn z0 = GridFn::zero(Grid{n}), z1 = GridFn::zero(Grid{n});
  const DampingProfile bump = DampingProfile::bump(Grid{n}, 0.5, 0.4, 1.0);
  const Trajectory traj = solve(z0, z1, make_saturation(), bump, 3.0, 0.25, {});
  for (const auto& s : traj.states) {
    CHECK(s.z.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.v.values.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("well-posedness bound: sup norms stay below twice the data bound") {
  const int n = 256;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  scale_to_hinf(z0, z1, 1.0);
  const DampingProfile bump = DampingProfile::bump(Grid{n}, 0.5, 0.4, 1.0);
  const Trajectory traj =
      solve(z0, z1, make_saturation(), bump, 20.0, 0.0625, {});

  const WaveState s0{0.0, z0, z1};
  GridFn zx0{Grid{n}, state_zx(s0), false};
  const double inf = std::numeric_limits<double>::infinity();
  const double data_bound = std::max(lp_norm(zx0, inf), lp_norm(z1, inf));
  for (const auto& s : traj.states) {
    GridFn zx{Grid{n}, state_zx(s), false};
    const double sup = std::max(lp_norm(zx, inf), lp_norm(s.v, inf));
    CHECK(sup <= 2.0 * data_bound * (1.0 + 1e-2));
  }
}

TEST_CASE("picard windows contract geometrically inside the ball") {
  const int n = 128;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  scale_to_hinf(z0, z1, 2.0);
  const DampingProfile bump = DampingProfile::bump(Grid{n}, 0.5, 0.4, 1.0);
  const Trajectory traj =
      solve(z0, z1, make_saturation(), bump, 10.0, 0.125, {});
  REQUIRE(traj.stats.windows.size() > 1);
  for (const auto& w : traj.stats.windows) {
    CHECK(w.contraction_bound <= 0.5 + 1e-12);
    CHECK(w.max_ratio <= 0.5);
    CHECK(w.max_ball_dist <= w.ball_radius);
    CHECK(w.iterations >= 1);
    CHECK(w.final_increment <= 1e-12);
  }
}

TEST_CASE("classical energy is non-increasing under valid damping") {
  const int n = 256;
  for (const DampingSpec& spec : {make_saturation(), make_linear(1.0)}) {
    GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
    scale_to_hinf(z0, z1, 2.0);
    const DampingProfile prof = DampingProfile::constant(Grid{n}, 1.0);
    const Trajectory traj = solve(z0, z1, spec, prof, 10.0, 0.125, {});
    std::vector<std::pair<double, double>> series;
    for (const auto& s : traj.states)
      series.emplace_back(s.t, classical_energy(s));
    INFO("damping ", spec.name);
    CHECK(check_monotone(series, 1e-6, 1e-9).empty());
  }
}

TEST_CASE("iteration cap raises a solver error naming the window") {
  const int n = 64;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  const DampingProfile prof = DampingProfile::constant(Grid{n}, 1.0);
  CharSolverConfig cfg;
  cfg.picard_max_iter = 1;
  CHECK_THROWS_AS(solve(z0, z1, make_saturation(), prof, 1.0, 0.25, cfg),
                  SolverError);
}

TEST_CASE("grid_n mismatch in the config is rejected") {
  const int n = 32;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  const DampingProfile prof = DampingProfile::constant(Grid{n}, 1.0);
  CharSolverConfig cfg;
  cfg.grid_n = 64;
  CHECK_THROWS_AS(solve(z0, z1, make_saturation(), prof, 1.0, 0.25, cfg),
                  std::invalid_argument);
}

}  // TEST_SUITE
