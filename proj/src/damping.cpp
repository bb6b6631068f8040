#include "lpwave/damping.hpp"

#include <cmath>
#include <stdexcept>

namespace lpwave {

double eval_quotient(const DampingSpec& spec, double s) {
  if (s == 0.0) return spec.c1;
  const double v = spec.sigma(s);
  if (!std::isfinite(v))
    throw std::runtime_error("eval_quotient: sigma(" + std::to_string(s) +
                             ") is not finite");
  return v / s;
}

ValidationReport validate_damping(const DampingSpec& spec, double radius,
                                  int samples) {
  if (!(radius > 0.0)) throw std::invalid_argument("validate_damping: radius > 0");
  if (samples < 3) throw std::invalid_argument("validate_damping: samples >= 3");

  ValidationReport report;
  auto flag = [&](const char* prop, double point, double value) {
    report.violations.push_back({prop, point, value});
  };

  const double zero_tol = 1e-12;
  const double s0 = spec.sigma(0.0);
  if (std::abs(s0) > zero_tol) flag("zero", 0.0, s0);
  if (!(spec.c1 > 0.0)) flag("c1_positive", 0.0, spec.c1);

  // finite-difference derivative at 0 against the declared c1
  {
    const double h = std::min(1e-4 * radius, 1e-4);
    const double fd = (spec.sigma(h) - spec.sigma(-h)) / (2.0 * h);
    if (std::abs(fd - spec.c1) > 1e-3 * std::max(1.0, std::abs(spec.c1)))
      flag("derivative", h, fd);
  }

  double prev_s = 0.0, prev_v = 0.0;
  bool have_prev = false;
  for (int i = 0; i < samples; ++i) {
    const double s = -radius + 2.0 * radius * i / (samples - 1);
    const double v = spec.sigma(s);
    if (!std::isfinite(v)) {
      flag("finite", s, v);
      continue;
    }
    if (s != 0.0) {
      const double vm = spec.sigma(-s);
      if (std::abs(v + vm) > zero_tol * std::max(1.0, std::abs(v)))
        flag("odd", s, v + vm);
      if (!(v * s > 0.0)) flag("sign", s, v);
    }
    if (spec.monotone && have_prev && s > prev_s &&
        v < prev_v - zero_tol * std::max(1.0, std::abs(prev_v)))
      flag("monotone", s, v - prev_v);
    if (spec.linear_bound_m &&
        std::abs(v) > *spec.linear_bound_m * std::abs(s) * (1.0 + 1e-12))
      flag("linear_bound", s, v);
    prev_s = s;
    prev_v = v;
    have_prev = true;
  }

  report.passed = report.violations.empty();
  return report;
}

SectorBounds sector_bounds(const DampingSpec& spec, double radius_R,
                           SectorMode mode) {
  if (!(radius_R > 0.0))
    throw std::invalid_argument("sector_bounds: radius_R > 0");

  const double half_width = 2.0 * radius_R;
  auto value_at = [&](double xi) {
    return mode == SectorMode::quotient ? eval_quotient(spec, xi)
                                        : spec.sigma_prime(xi);
  };

  auto scan = [&](int points, double& lo, double& hi) {
    lo = value_at(0.0);
    hi = lo;
    for (int i = 0; i <= points; ++i) {
      const double xi = -half_width + 2.0 * half_width * i / points;
      const double v = value_at(xi);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };

  int points = 1 << 12;
  double d0, d1;
  scan(points, d0, d1);
  for (int pass = 0; pass < 10; ++pass) {
    points *= 2;
    double n0, n1;
    scan(points, n0, n1);
    const bool stable =
        std::abs(n0 - d0) <= 1e-6 * std::max(std::abs(n0), 1e-30) &&
        std::abs(n1 - d1) <= 1e-6 * std::max(std::abs(n1), 1e-30);
    d0 = n0;
    d1 = n1;
    if (stable) break;
  }

  SectorBounds b;
  b.d0 = d0;
  b.d1 = d1;
  b.radius_R = radius_R;
  b.mode = mode;
  b.nonpositive_d0 = (mode == SectorMode::quotient && d0 <= 0.0);
  return b;
}

double estimate_lipschitz(const std::function<double(double)>& sigma,
                          double radius) {
  const double r = std::max(radius, 1e-8);
  const int points = 1 << 13;
  double lip = 0.0;
  double prev = sigma(-r);
  const double h = 2.0 * r / points;
  for (int i = 1; i <= points; ++i) {
    const double cur = sigma(-r + h * i);
    lip = std::max(lip, std::abs(cur - prev) / h);
    prev = cur;
  }
  return lip;
}

// Catalog ----------------------------------------------------------------

namespace {
double sat(double s) { return s > 1.0 ? 1.0 : (s < -1.0 ? -1.0 : s); }
}  // namespace

DampingSpec make_saturation() {
  DampingSpec d;
  d.name = "saturation";
  d.sigma = [](double s) { return sat(s); };
  d.sigma_prime = [](double s) { return std::abs(s) <= 1.0 ? 1.0 : 0.0; };
  d.c1 = 1.0;
  d.monotone = true;
  d.linear_bound_m = 1.0;
  d.lipschitz_on = [](double) { return 1.0; };
  return d;
}

DampingSpec make_linear(double k) {
  DampingSpec d;
  d.name = "linear";
  d.sigma = [k](double s) { return k * s; };
  d.sigma_prime = [k](double) { return k; };
  d.c1 = k;
  d.monotone = k >= 0.0;
  if (k > 0.0) d.linear_bound_m = k;
  d.lipschitz_on = [k](double) { return std::abs(k); };
  return d;
}

DampingSpec make_sat_sine(double coeff) {
  DampingSpec d;
  d.name = coeff >= 0.0 ? "sat_sine_stable" : "sat_sine";
  auto inner = [coeff](double s) { return 0.25 * s + coeff * std::sin(10.0 * s); };
  d.sigma = [inner](double s) { return sat(inner(s)); };
  d.sigma_prime = [inner, coeff](double s) {
    const double f = inner(s);
    return std::abs(f) <= 1.0 ? 0.25 + 10.0 * coeff * std::cos(10.0 * s) : 0.0;
  };
  d.c1 = 0.25 + 10.0 * coeff;
  d.monotone = false;
  d.linear_bound_m = 0.25 + 10.0 * std::abs(coeff);
  const double lip = 0.25 + 10.0 * std::abs(coeff);
  d.lipschitz_on = [lip](double) { return lip; };
  return d;
}

DampingSpec make_tanh() {
  DampingSpec d;
  d.name = "tanh";
  d.sigma = [](double s) { return std::tanh(s); };
  d.sigma_prime = [](double s) {
    const double t = std::tanh(s);
    return 1.0 - t * t;
  };
  d.c1 = 1.0;
  d.monotone = true;
  d.linear_bound_m = 1.0;
  d.lipschitz_on = [](double) { return 1.0; };
  return d;
}

DampingSpec make_power(double r) {
  DampingSpec d;
  d.name = "power";
  d.sigma = [r](double s) {
    return (s >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(s), r + 1.0) / (r + 1.0);
  };
  d.sigma_prime = [r](double s) { return std::pow(std::abs(s), r); };
  d.c1 = 0.0;  // sigma'(0) = 0 for r > 0
  d.monotone = true;
  d.lipschitz_on = [r](double radius) { return std::pow(radius, r); };
  return d;
}

DampingSpec make_loglin() {
  DampingSpec d;
  d.name = "loglin";
  d.sigma = [](double s) { return s / std::log(2.0 + std::abs(s)); };
  d.sigma_prime = [](double s) {
    const double a = std::abs(s);
    const double lg = std::log(2.0 + a);
    return (lg - a / (2.0 + a)) / (lg * lg);
  };
  d.c1 = 1.0 / std::log(2.0);
  d.monotone = true;
  d.linear_bound_m = 1.0 / std::log(2.0);
  const double lip = 1.0 / std::log(2.0);
  d.lipschitz_on = [lip](double) { return lip; };
  return d;
}

std::optional<DampingSpec> damping_by_name(
    const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "saturation") return make_saturation();
  if (name == "linear") return make_linear(get("k", 1.0));
  if (name == "sat_sine") return make_sat_sine(get("coeff", -1.0 / 30.0));
  if (name == "sat_sine_stable") return make_sat_sine(get("coeff", 1.0 / 30.0));
  if (name == "tanh") return make_tanh();
  if (name == "power") return make_power(get("r", 2.0));
  if (name == "loglin") return make_loglin();
  return std::nullopt;
}

}  // namespace lpwave
