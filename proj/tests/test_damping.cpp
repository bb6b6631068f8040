#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lpwave/damping.hpp"

using namespace lpwave;

namespace {
bool has_violation(const ValidationReport& r, const std::string& prop) {
  for (const auto& v : r.violations)
    if (v.property == prop) return true;
  return false;
}
}  // namespace

TEST_SUITE("damping") {

TEST_CASE("eval_quotient on the catalog") {
  const DampingSpec sat = make_saturation();
  CHECK(eval_quotient(sat, 0.0) == 1.0);
  CHECK(eval_quotient(sat, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  const DampingSpec lin = make_linear(3.0);
  CHECK(eval_quotient(lin, 7.2) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("eval_quotient is even and positive for valid dampings") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-10.0, 10.0);
  for (const DampingSpec& spec :
       {make_saturation(), make_linear(0.7), make_tanh(), make_loglin(),
        make_sat_sine(1.0 / 30.0)}) {
    CHECK(eval_quotient(spec, 0.0) > 0.0);
    for (int i = 0; i < 100; ++i) {
      const double s = uni(rng);
      CHECK(eval_quotient(spec, s) ==
            doctest::Approx(eval_quotient(spec, -s)).epsilon(1e-12));
      if (s != 0.0) CHECK(eval_quotient(spec, s) > 0.0);
    }
  }
}

TEST_CASE("eval_quotient reports non-finite sigma") {
  DampingSpec bad = make_linear(1.0);
  bad.sigma = [](double) { return std::numeric_limits<double>::infinity(); };
  CHECK_THROWS_AS(eval_quotient(bad, 1.0), std::runtime_error);
}

TEST_CASE("validate_damping accepts the valid catalog entries") {
  for (const DampingSpec& spec :
       {make_saturation(), make_linear(1.0), make_tanh(), make_loglin(),
        make_sat_sine(1.0 / 30.0)}) {
    const ValidationReport r = validate_damping(spec, 5.0, 2001);
    INFO("spec ", spec.name);
    CHECK(r.passed);
    CHECK(r.violations.empty());
  }
}

TEST_CASE("the published sat-sine composite fails the sign condition near 0") {
  // sigma'(0) = 1/4 - 1/3 = -1/12 < 0, so sigma(s)s < 0 in a neighborhood
  const DampingSpec spec = make_sat_sine(-1.0 / 30.0);
  CHECK(spec.c1 == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));

  // independent probe of the quotient on a fine grid near 0
  bool negative_near_zero = false;
  for (int i = 1; i <= 1000; ++i) {
    const double s = 1e-4 * i;
    if (spec.sigma(s) * s < 0.0) negative_near_zero = true;
  }
  CHECK(negative_near_zero);

  const ValidationReport r = validate_damping(spec, 1.0, 2001);
  CHECK_FALSE(r.passed);
  CHECK(has_violation(r, "sign"));
  CHECK(has_violation(r, "c1_positive"));
}

TEST_CASE("the power-family representative has sigma'(0) = 0") {
  const DampingSpec spec = make_power(2.0);
  const ValidationReport r = validate_damping(spec, 2.0, 1001);
  CHECK_FALSE(r.passed);
  CHECK(has_violation(r, "c1_positive"));
  CHECK_FALSE(has_violation(r, "sign"));  // s*sigma(s) = |s|^4/3 > 0
  CHECK_FALSE(has_violation(r, "odd"));
}

TEST_CASE("declared properties are probed") {
  DampingSpec lying = make_tanh();
  lying.linear_bound_m = 0.5;  // tanh(s) > 0.5 s near 0
  CHECK(has_violation(validate_damping(lying, 2.0, 1001), "linear_bound"));

  DampingSpec nonmono = make_sat_sine(1.0 / 30.0);
  nonmono.monotone = true;  // it is not
  CHECK(has_violation(validate_damping(nonmono, 2.0, 4001), "monotone"));
}

TEST_CASE("validate_damping preconditions") {
  CHECK_THROWS_AS(validate_damping(make_saturation(), 0.0, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_damping(make_saturation(), 1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("sector bounds of the saturation: closed form min(1, 1/(2R))") {
  const DampingSpec sat = make_saturation();
  SUBCASE("R = 1, quotient") {
    const SectorBounds b = sector_bounds(sat, 1.0, SectorMode::quotient);
    CHECK(b.d0 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(b.d1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_FALSE(b.nonpositive_d0);

    // brute-force oracle on a dense independent grid
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i <= 2000000; ++i) {
      const double xi = -2.0 + 4.0 * i / 2000000.0;
      const double q = xi == 0.0 ? 1.0 : sat.sigma(xi) / xi;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    CHECK(b.d0 == doctest::Approx(lo).epsilon(1e-6));
    CHECK(b.d1 == doctest::Approx(hi).epsilon(1e-6));
  }
  SUBCASE("closed form across several R") {
    for (double R : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const SectorBounds b = sector_bounds(sat, R, SectorMode::quotient);
      CHECK(b.d0 == doctest::Approx(std::min(1.0, 1.0 / (2.0 * R))).epsilon(1e-6));
      CHECK(b.d1 == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("derivative mode inside the linear zone") {
    const SectorBounds b = sector_bounds(sat, 0.4, SectorMode::derivative);
    CHECK(b.d0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.d1 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sector bounds of a linear damping are constant") {
  const DampingSpec lin = make_linear(2.5);
  for (double R : {0.1, 1.0, 10.0}) {
    const SectorBounds b = sector_bounds(lin, R, SectorMode::quotient);
    CHECK(b.d0 == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(b.d1 == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("sector bounds are monotone in R") {
  for (const DampingSpec& spec :
       {make_saturation(), make_tanh(), make_loglin(),
        make_sat_sine(1.0 / 30.0)}) {
    double prev_d0 = std::numeric_limits<double>::infinity();
    double prev_d1 = -std::numeric_limits<double>::infinity();
    // slack at the adaptive-refinement stabilization tolerance
    for (double R : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const SectorBounds b = sector_bounds(spec, R, SectorMode::quotient);
      CHECK(b.d0 <= prev_d0 * (1.0 + 2e-6) + 2e-6);
      CHECK(b.d1 >= prev_d1 * (1.0 - 2e-6) - 2e-6);
      prev_d0 = b.d0;
      prev_d1 = b.d1;
    }
  }
}

TEST_CASE("nonpositive d0 raises the warning flag, not an error") {
  const SectorBounds b =
      sector_bounds(make_sat_sine(-1.0 / 30.0), 1.0, SectorMode::quotient);
  CHECK(b.nonpositive_d0);
  CHECK(b.d0 < 0.0);
}

TEST_CASE("registry lookup") {
  CHECK(damping_by_name("saturation", {}).has_value());
  CHECK(damping_by_name("linear", {{"k", 3.0}})->c1 == 3.0);
  CHECK_FALSE(damping_by_name("does_not_exist", {}).has_value());
}

}  // TEST_SUITE
