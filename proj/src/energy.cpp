#include "lpwave/energy.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace lpwave {

ConvexWeight ConvexWeight::power_p(double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("power_p: p must satisfy p >= 1");
  ConvexWeight w;
  w.id = "power" + std::to_string(p);
  w.F = [p](double s) { return std::pow(std::abs(s), p) / p; };
  return w;
}

ConvexWeight ConvexWeight::pos_square(double c) {
  if (c < 0.0) throw std::invalid_argument("pos_square: c must be >= 0");
  ConvexWeight w;
  w.id = "pos_square";
  w.F = [c](double s) {
    const double r = std::abs(s) - c;
    return r > 0.0 ? r * r : 0.0;
  };
  return w;
}

ConvexWeight ConvexWeight::custom(std::string id,
                                  std::function<double(double)> F) {
  return ConvexWeight{std::move(id), std::move(F)};
}

void validate_weight(const ConvexWeight& w, double radius, int samples) {
  if (!(radius > 0.0) || samples < 3)
    throw std::invalid_argument("validate_weight: bad probe parameters");
  const double f0 = w.F(0.0);
  for (int i = 0; i < samples; ++i) {
    const double s = -radius + 2.0 * radius * i / (samples - 1);
    const double fs = w.F(s);
    if (std::abs(fs - w.F(-s)) > 1e-12 * std::max(1.0, std::abs(fs)))
      throw std::invalid_argument("weight " + w.id + ": F is not even");
    if (fs < f0 - 1e-12)
      throw std::invalid_argument("weight " + w.id + ": F(0) is not minimal");
    if (i + 2 < samples) {
      const double s2 = -radius + 2.0 * radius * (i + 2) / (samples - 1);
      const double mid = w.F(0.5 * (s + s2));
      if (mid > 0.5 * (fs + w.F(s2)) + 1e-12 * std::max(1.0, std::abs(mid)))
        throw std::invalid_argument("weight " + w.id +
                                    ": midpoint convexity fails");
    }
  }
}

Eigen::VectorXd state_zx(const WaveState& state) { return finite_diff(state.z); }

namespace {

double lp_of_vector(const Grid& g, const Eigen::VectorXd& vals, double p) {
  GridFn f;
  f.grid = g;
  f.values = vals;
  return lp_norm(f, p);
}

void require_p_ge2(double p, const char* who) {
  if (!(p >= 2.0))
    throw std::invalid_argument(std::string(who) + ": p must be in [2, inf]");
}

}  // namespace

double hp_norm(const WaveState& state, double p) {
  require_p_ge2(p, "hp_norm");
  return lp_of_vector(state.z.grid, state_zx(state), p) + lp_norm(state.v, p);
}

double dp_norm(const WaveState& state, double p) {
  require_p_ge2(p, "dp_norm");
  return lp_of_vector(state.z.grid, second_diff(state.z), p) +
         lp_of_vector(state.v.grid, finite_diff(state.v), p);
}

double haraux_phi(const WaveState& state, const ConvexWeight& F) {
  const Eigen::VectorXd zx = state_zx(state);
  const int n = state.z.grid.n;
  const double dx = state.z.grid.dx();
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 * dx : dx;
    const double u = state.v.values[j];
    acc += w * (F.F(u + zx[j]) + F.F(u - zx[j]));
  }
  return acc;
}

double classical_energy(const WaveState& state) {
  const Eigen::VectorXd zx = state_zx(state);
  const int n = state.z.grid.n;
  const double dx = state.z.grid.dx();
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 * dx : dx;
    acc += w * (state.v.values[j] * state.v.values[j] + zx[j] * zx[j]);
  }
  return 0.5 * acc;
}

std::vector<MonotoneViolation> check_monotone(
    const std::vector<std::pair<double, double>>& series, double rel_slack,
    double abs_slack) {
  for (std::size_t k = 1; k < series.size(); ++k)
    if (!(series[k].first > series[k - 1].first))
      throw std::invalid_argument("check_monotone: times must be increasing");
  std::vector<MonotoneViolation> out;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const double allowed = series[k].second * (1.0 + rel_slack) + abs_slack;
    if (series[k + 1].second > allowed)
      out.push_back({k, series[k].first, series[k].second,
                     series[k + 1].second});
  }
  return out;
}

EnergySample energy_sample(const WaveState& state, bool with_dp2) {
  EnergySample e;
  e.t = state.t;
  e.h2 = hp_norm(state, 2.0);
  e.h4 = hp_norm(state, 4.0);
  e.h8 = hp_norm(state, 8.0);
  e.hinf = hp_norm(state, std::numeric_limits<double>::infinity());
  e.phi2 = haraux_phi(state, ConvexWeight::power_p(2.0));
  e.phi4 = haraux_phi(state, ConvexWeight::power_p(4.0));
  e.phi8 = haraux_phi(state, ConvexWeight::power_p(8.0));
  e.classical = classical_energy(state);
  if (with_dp2) e.dp2 = dp_norm(state, 2.0);
  return e;
}

void write_energy_csv(const Trajectory& traj, std::ostream& os) {
  char buf[256];
  os << kEnergyCsvHeader << "\n";
  for (const auto& s : traj.states) {
    const EnergySample e = energy_sample(s);
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  e.t, e.h2, e.h4, e.h8, e.hinf, e.phi2, e.phi4, e.phi8,
                  e.classical);
    os << buf;
  }
}

}  // namespace lpwave
