#include "lpwave/wave.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "lpwave/energy.hpp"

namespace lpwave {

DampingProfile DampingProfile::constant(Grid g, double value) {
  if (value < 0.0)
    throw std::invalid_argument("profile: constant value must be >= 0");
  DampingProfile p;
  p.a = GridFn::sample(g, [value](double) { return value; });
  p.a_inf = value;
  p.a1 = 0.0;
  return p;
}

DampingProfile DampingProfile::bump(Grid g, double center, double width,
                                    double amp) {
  if (!(width > 0.0) || amp < 0.0)
    throw std::invalid_argument("profile: bump needs width > 0 and amp >= 0");
  DampingProfile p;
  p.a = GridFn::sample(g, [=](double x) {
    const double xi = 2.0 * (x - center) / width;
    if (std::abs(xi) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * M_PI * xi);
    return amp * c * c;
  });
  p.a_inf = amp;
  p.a1 = amp * M_PI / width;
  p.support = {center - 0.5 * width, center + 0.5 * width};
  return p;
}

DampingProfile DampingProfile::from_table(
    Grid g, const std::vector<std::pair<double, double>>& table) {
  if (table.size() < 2)
    throw std::invalid_argument("profile: table needs at least two rows");
  for (size_t i = 1; i < table.size(); ++i)
    if (!(table[i].first > table[i - 1].first))
      throw std::invalid_argument("profile: table x must be increasing");
  auto eval = [&table](double x) {
    if (x <= table.front().first) return table.front().second;
    if (x >= table.back().first) return table.back().second;
    size_t i = 1;
    while (table[i].first < x) ++i;
    const auto& [xa, ya] = table[i - 1];
    const auto& [xb, yb] = table[i];
    return ya + (yb - ya) * (x - xa) / (xb - xa);
  };
  DampingProfile p;
  p.a = GridFn::sample(g, eval);
  p.a_inf = p.a.values.maxCoeff();
  double slope = 0.0;
  for (size_t i = 1; i < table.size(); ++i)
    slope = std::max(slope, std::abs(table[i].second - table[i - 1].second) /
                                (table[i].first - table[i - 1].first));
  p.a1 = slope;
  return p;
}

void validate_profile(const DampingProfile& profile) {
  const auto& a = profile.a;
  if (a.values.minCoeff() < 0.0)
    throw std::invalid_argument("profile: a(x) must be >= 0");
  if (a.values.maxCoeff() > profile.a_inf * (1.0 + 1e-12))
    throw std::invalid_argument("profile: a_inf is not an upper bound");
  if (profile.a1) {
    const double dx = a.grid.dx();
    for (int j = 0; j + 1 <= a.grid.n; ++j) {
      const double slope = std::abs(a.values[j + 1] - a.values[j]) / dx;
      if (slope > *profile.a1 * (1.0 + 1e-6) + 1e-12)
        throw std::invalid_argument("profile: declared a1 bound exceeded");
    }
  }
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os,
                          TrajectoryCsvMode mode) {
  char buf[64];
  if (mode == TrajectoryCsvMode::norms) {
    write_energy_csv(traj, os);
    return;
  }
  if (traj.states.empty()) return;
  const int n = traj.states.front().z.grid.n;
  os << "t";
  for (int j = 0; j <= n; ++j) {
    std::snprintf(buf, sizeof(buf), ",z%d", j);
    os << buf;
  }
  os << "\n";
  for (const auto& s : traj.states) {
    std::snprintf(buf, sizeof(buf), "%.17g", s.t);
    os << buf;
    for (int j = 0; j <= n; ++j) {
      std::snprintf(buf, sizeof(buf), ",%.17g", s.z.values[j]);
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace lpwave
