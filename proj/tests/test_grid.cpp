#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lpwave/grid.hpp"

using namespace lpwave;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

GridFn sine(int n, double k = 1.0) {
  return GridFn::sample(
      Grid{n}, [k](double x) { return std::sin(k * M_PI * x); }, true);
}
}  // namespace

TEST_SUITE("grid") {

TEST_CASE("odd periodic extension of sin(pi x) reproduces the sine") {
  GridFn f = sine(256);
  // sin(pi x) is its own odd 2-periodic extension
  CHECK(extend_odd_periodic(f, -0.25) ==
        doctest::Approx(-std::sin(0.25 * M_PI)).epsilon(1e-4));
  CHECK(extend_odd_periodic(f, 1.5) == doctest::Approx(-1.0).epsilon(1e-12));
  for (double x : {0.37, -1.91, 2.63, 5.08})
    CHECK(extend_odd_periodic(f, x) ==
          doctest::Approx(std::sin(M_PI * x)).epsilon(1e-4));
}

TEST_CASE("extension agrees exactly with samples at interior nodes") {
  GridFn f = GridFn::sample(
      Grid{97}, [](double x) { return x * (1.0 - x) * std::cos(3.0 * x); },
      true);
  for (int j = 1; j < 97; ++j)
    CHECK(extend_odd_periodic(f, f.grid.node(j)) == f.values[j]);
}

TEST_CASE("periodicity and the two reflection identities") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  GridFn f = GridFn::sample(
      Grid{64},
      [](double x) {
        return std::sin(2.0 * M_PI * x) + 0.3 * std::sin(5.0 * M_PI * x);
      },
      true);
  for (int i = 0; i < 200; ++i) {
    const double x = uni(rng);
    const double v = extend_odd_periodic(f, x);
    CHECK(extend_odd_periodic(f, x + 2.0) == doctest::Approx(v).epsilon(1e-12));
    CHECK(extend_odd_periodic(f, -x) + v ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(extend_odd_periodic(f, 2.0 - x) + v ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("integrate_odd_periodic: closed form, periodicity, additivity") {
  GridFn f = sine(128);
  // int_0^1 sin(pi x) = 2/pi
  CHECK(integrate_odd_periodic(f, 0.0, 1.0) ==
        doctest::Approx(2.0 / M_PI).epsilon(1e-4));
  // a full period integrates to zero
  CHECK(std::abs(integrate_odd_periodic(f, -0.7, 1.3)) < 1e-12);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    double a = uni(rng), b = uni(rng), c = uni(rng);
    const double whole = integrate_odd_periodic(f, a, c);
    const double split =
        integrate_odd_periodic(f, a, b) + integrate_odd_periodic(f, b, c);
    CHECK(whole == doctest::Approx(split).epsilon(1e-10));
  }
}

TEST_CASE("lp_norm of the constant-one interior function") {
  GridFn f = GridFn::sample(Grid{32}, [](double) { return 1.0; }, false);
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm(f, 5.5) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lp_norm of sin(pi x): closed form and brute-force quadrature") {
  GridFn f = sine(256);
  // int sin^2 = 1/2, so the L2 norm is 1/sqrt(2)
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-5));

  // independent oracle: midpoint rule at n = 10^4 for p = 3
  const double p = 3.0;
  double acc = 0.0;
  const int m = 10000;
  for (int i = 0; i < m; ++i) {
    const double x = (i + 0.5) / m;
    acc += std::pow(std::abs(std::sin(M_PI * x)), p) / m;
  }
  CHECK(lp_norm(f, p) == doctest::Approx(std::pow(acc, 1.0 / p)).epsilon(1e-5));

  CHECK(lp_norm(f, kInf) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lp_norm rejects p < 1") {
  GridFn f = sine(16);
  CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lp_norm(f, -2.0), std::invalid_argument);
}

TEST_CASE("Hoelder interpolation ||f||_p <= ||f||_2^(2/p) ||f||_inf^(1-2/p)") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    GridFn f = GridFn::zero(Grid{50}, false);
    for (int j = 0; j <= 50; ++j) f.values[j] = uni(rng);
    for (double p : {2.5, 3.0, 4.0, 8.0, 20.0}) {
      const double rhs = std::pow(lp_norm(f, 2.0), 2.0 / p) *
                         std::pow(lp_norm(f, kInf), 1.0 - 2.0 / p);
      CHECK(lp_norm(f, p) <= rhs * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("trapezoid quadrature converges at second order") {
  const double exact = std::sqrt((std::exp(2.0) - 1.0) / 2.0);
  auto err = [&](int n) {
    GridFn f = GridFn::sample(Grid{n}, [](double x) { return std::exp(x); });
    return std::abs(lp_norm(f, 2.0) - exact);
  };
  const double ratio = err(64) / err(128);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("dirichlet tag is enforced") {
  GridFn f = GridFn::sample(Grid{16}, [](double x) { return x + 1.0; }, false);
  CHECK_THROWS_AS(extend_odd_periodic(f, 0.5), std::invalid_argument);
}

}  // TEST_SUITE
