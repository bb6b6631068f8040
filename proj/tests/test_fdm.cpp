#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lpwave/analysis.hpp"
#include "lpwave/characteristics.hpp"
#include "lpwave/errors.hpp"
#include "lpwave/fdm.hpp"

using namespace lpwave;

namespace {

GridFn sine(int n, double k = 1.0) {
  return GridFn::sample(
      Grid{n}, [k](double x) { return std::sin(k * M_PI * x); }, true);
}

// sup over shared sample times of max(|dz|, |dv|)
double traj_distance(const Trajectory& a, const Trajectory& b) {
  REQUIRE(a.states.size() == b.states.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    REQUIRE(a.states[i].t == doctest::Approx(b.states[i].t).epsilon(1e-12));
    d = std::max(d, (a.states[i].z.values - b.states[i].z.values)
                        .cwiseAbs()
                        .maxCoeff());
    d = std::max(d, (a.states[i].v.values - b.states[i].v.values)
                        .cwiseAbs()
                        .maxCoeff());
  }
  return d;
}

}  // namespace

TEST_SUITE("fdm") {

TEST_CASE("leapfrog at unit CFL is exact for the undamped wave") {
  const int n = 256;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  const DampingProfile off = DampingProfile::constant(Grid{n}, 0.0);
  const Trajectory traj =
      fdm_solve(z0, z1, make_saturation(), off, 2.0, 2.0);
  // period-2 return
  const auto& last = traj.states.back();
  REQUIRE(last.t == doctest::Approx(2.0));
  CHECK((last.z.values - z0.values).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("discrete leapfrog energy is conserved without damping") {
  const int n = 128;
  GridFn z0 = sine(n, 3.0), z1 = sine(n, 1.0);
  const DampingProfile off = DampingProfile::constant(Grid{n}, 0.0);
  const Trajectory traj =
      fdm_solve(z0, z1, make_saturation(), off, 3.0, 1.0 / n);
  REQUIRE(traj.states.size() > 100);
  double e0 = -1.0;
  for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
    const double e = leapfrog_energy(traj.states[i].z, traj.states[i + 1].z);
    if (e0 < 0.0)
      e0 = e;
    else
      CHECK(e == doctest::Approx(e0).epsilon(1e-10));
  }
}

TEST_CASE("undamped fdm matches the reflection formula") {
  const int n = 128;
  // pure displacement data: both schemes propagate node values exactly
  GridFn z0 = sine(n), zero = GridFn::zero(Grid{n});
  const DampingProfile off = DampingProfile::constant(Grid{n}, 0.0);
  const Trajectory traj =
      fdm_solve(z0, zero, make_saturation(), off, 1.5, 0.25);
  for (const auto& s : traj.states) {
    const WaveState ref = dalembert_homogeneous(z0, zero, s.t);
    CHECK((s.z.values - ref.z.values).cwiseAbs().maxCoeff() < 1e-12);
  }
  // velocity data enters through different quadratures: O(dx^2) agreement
  GridFn z1 = sine(n, 2.0);
  const Trajectory traj2 = fdm_solve(z0, z1, make_saturation(), off, 1.5, 0.25);
  for (const auto& s : traj2.states) {
    const WaveState ref = dalembert_homogeneous(z0, z1, s.t);
    CHECK((s.z.values - ref.z.values).cwiseAbs().maxCoeff() < 5e-4);
  }
}

TEST_CASE("blow-up is reported with the failure time") {
  const int n = 64;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  const DampingProfile prof = DampingProfile::constant(Grid{n}, 1.0);
  DampingSpec anti = make_linear(1.0);
  anti.sigma = [](double s) { return -80.0 * s * s * s; };
  CHECK_THROWS_AS(fdm_solve(z0, z1, anti, prof, 50.0, 1.0), SolverError);
}

TEST_CASE("cross-solver oracle: saturation with a bump profile") {
  auto run_pair = [](int n) {
    GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
    scale_to_hinf(z0, z1, 2.0);
    const DampingProfile bump = DampingProfile::bump(Grid{n}, 0.5, 0.4, 1.0);
    const DampingSpec sat = make_saturation();
    const Trajectory a = solve(z0, z1, sat, bump, 5.0, 0.0625, {});
    const Trajectory b = fdm_solve(z0, z1, sat, bump, 5.0, 0.0625);
    return traj_distance(a, b);
  };
  const double d128 = run_pair(128);
  const double d256 = run_pair(256);
  // first-order agreement with a pinned constant, and refinement gain
  CHECK(d256 <= 5.0 * (1.0 / 256.0));
  CHECK(d128 / d256 >= 1.8);
}

TEST_CASE("matched source pairing reproduces the oracle, crossed does not") {
  const int n = 128;
  GridFn z0 = sine(n), z1 = GridFn::zero(Grid{n});
  scale_to_hinf(z0, z1, 2.0);
  const DampingProfile bump = DampingProfile::bump(Grid{n}, 0.5, 0.4, 1.0);
  const DampingSpec sat = make_saturation();
  const Trajectory oracle = fdm_solve(z0, z1, sat, bump, 4.0, 0.25);

  CharSolverConfig matched;
  matched.pairing = SourcePairing::matched;
  CharSolverConfig crossed;
  crossed.pairing = SourcePairing::crossed;
  const double dm =
      traj_distance(solve(z0, z1, sat, bump, 4.0, 0.25, matched), oracle);
  const double dc =
      traj_distance(solve(z0, z1, sat, bump, 4.0, 0.25, crossed), oracle);
  CHECK(dm <= 5.0 * (1.0 / n));
  CHECK(dc > 10.0 * dm);

  // both pairings coincide for a constant coefficient
  const DampingProfile flat = DampingProfile::constant(Grid{n}, 1.0);
  const double agree =
      traj_distance(solve(z0, z1, sat, flat, 2.0, 0.25, matched),
                    solve(z0, z1, sat, flat, 2.0, 0.25, crossed));
  CHECK(agree < 1e-9);
}

TEST_CASE("refinement consistency against the characteristics solver") {
  // doubling n reduces the cross-solver gap by ~the dt order
  auto gap = [](int n) {
    GridFn z0 = sine(n, 2.0), z1 = GridFn::zero(Grid{n});
    const DampingProfile prof = DampingProfile::constant(Grid{n}, 0.8);
    const DampingSpec lin = make_linear(1.0);
    return traj_distance(solve(z0, z1, lin, prof, 3.0, 0.25, {}),
                         fdm_solve(z0, z1, lin, prof, 3.0, 0.25));
  };
  CHECK(gap(64) / gap(128) >= 1.8);
}

}  // TEST_SUITE
