#include "lpwave/grid.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lpwave {

GridFn GridFn::zero(Grid g, bool dirichlet) {
  if (g.n < 2) throw std::invalid_argument("grid: need n >= 2");
  GridFn f;
  f.grid = g;
  f.values = Eigen::VectorXd::Zero(g.num_nodes());
  f.dirichlet = dirichlet;
  return f;
}

GridFn GridFn::sample(Grid g, const std::function<double(double)>& fn,
                      bool dirichlet) {
  GridFn f = zero(g, dirichlet);
  for (int j = 0; j <= g.n; ++j) f.values[j] = fn(g.node(j));
  if (dirichlet) {
    f.values[0] = 0.0;
    f.values[g.n] = 0.0;
  }
  if (!f.values.allFinite())
    throw std::invalid_argument("grid: sampled function has non-finite values");
  return f;
}

void require_dirichlet(const GridFn& f, const char* who) {
  if (!f.dirichlet || f.values[0] != 0.0 || f.values[f.grid.n] != 0.0)
    throw std::invalid_argument(std::string(who) +
                                ": grid function must be dirichlet-tagged "
                                "with vanishing endpoint values");
}

double odd_ext_node(const GridFn& f, long long m) {
  const long long p = 2LL * f.grid.n;
  long long r = m % p;
  if (r < 0) r += p;
  return r <= f.grid.n ? f.values[static_cast<int>(r)]
                       : -f.values[static_cast<int>(p - r)];
}

double even_ext_node(const GridFn& f, long long m) {
  const long long p = 2LL * f.grid.n;
  long long r = m % p;
  if (r < 0) r += p;
  return r <= f.grid.n ? f.values[static_cast<int>(r)]
                       : f.values[static_cast<int>(p - r)];
}

namespace {

// Reduce x into [0,1] through the reflections; returns the sign picked up.
void reduce_odd(double x, double& pos, double& sign) {
  double u = x - 2.0 * std::floor(x / 2.0);  // [0,2)
  sign = 1.0;
  if (u > 1.0) {
    u = 2.0 - u;
    sign = -1.0;
  }
  pos = u;
}

// Linear interpolation on [0,1]; snaps to the node when x*n is within
// rounding distance of an integer so node queries are exact.
double interp01(const GridFn& f, double pos) {
  const int n = f.grid.n;
  double s = pos * n;
  double rs = std::round(s);
  if (std::abs(s - rs) < 1e-9 && rs >= 0.0 && rs <= n)
    return f.values[static_cast<int>(rs)];
  int j = static_cast<int>(std::floor(s));
  if (j < 0) j = 0;
  if (j >= n) j = n - 1;
  const double w = s - j;
  return (1.0 - w) * f.values[j] + w * f.values[j + 1];
}

}  // namespace

double extend_odd_periodic(const GridFn& f, double x) {
  require_dirichlet(f, "extend_odd_periodic");
  double pos, sign;
  reduce_odd(x, pos, sign);
  return sign * interp01(f, pos);
}

double extend_even_periodic(const GridFn& f, double x) {
  double pos, sign;
  reduce_odd(x, pos, sign);
  return interp01(f, pos);
}

namespace {

// Antiderivative of the piecewise-linear extension evaluated at u, with the
// convention I(0) = 0. Periods contribute zero because the extension is
// odd.
double ext_antiderivative(const GridFn& f, double u) {
  const int n = f.grid.n;
  const double dx = f.grid.dx();
  double ubar = u - 2.0 * std::floor(u / 2.0);  // [0,2)
  // cumulative trapezoid over [0, ubar]
  const double s = ubar * n;  // node coordinate in [0, 2n)
  const long long jfull = static_cast<long long>(std::floor(s));
  double acc = 0.0;
  for (long long m = 0; m < jfull; ++m)
    acc += 0.5 * dx * (odd_ext_node(f, m) + odd_ext_node(f, m + 1));
  const double frac = s - static_cast<double>(jfull);
  if (frac > 0.0) {
    const double fa = odd_ext_node(f, jfull);
    const double fb = odd_ext_node(f, jfull + 1);
    const double fu = fa + frac * (fb - fa);
    acc += 0.5 * (frac * dx) * (fa + fu);
  }
  return acc;
}

}  // namespace

double integrate_odd_periodic(const GridFn& f, double a, double b) {
  require_dirichlet(f, "integrate_odd_periodic");
  return ext_antiderivative(f, b) - ext_antiderivative(f, a);
}

double lp_norm(const GridFn& f, double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("lp_norm: p must satisfy p >= 1");
  if (std::isinf(p)) return f.values.cwiseAbs().maxCoeff();
  const int n = f.grid.n;
  const double dx = f.grid.dx();
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 * dx : dx;
    acc += w * std::pow(std::abs(f.values[j]), p);
  }
  return std::pow(acc, 1.0 / p);
}

Eigen::VectorXd finite_diff(const GridFn& f) {
  const int n = f.grid.n;
  const double dx = f.grid.dx();
  Eigen::VectorXd d(n + 1);
  d[0] = (-3.0 * f.values[0] + 4.0 * f.values[1] - f.values[2]) / (2.0 * dx);
  for (int j = 1; j < n; ++j)
    d[j] = (f.values[j + 1] - f.values[j - 1]) / (2.0 * dx);
  d[n] =
      (3.0 * f.values[n] - 4.0 * f.values[n - 1] + f.values[n - 2]) / (2.0 * dx);
  return d;
}

Eigen::VectorXd second_diff(const GridFn& f) {
  const int n = f.grid.n;
  const double dx2 = f.grid.dx() * f.grid.dx();
  Eigen::VectorXd d(n + 1);
  for (int j = 1; j < n; ++j)
    d[j] = (f.values[j + 1] - 2.0 * f.values[j] + f.values[j - 1]) / dx2;
  d[0] = (2.0 * f.values[0] - 5.0 * f.values[1] + 4.0 * f.values[2] -
          f.values[3]) /
         dx2;
  d[n] = (2.0 * f.values[n] - 5.0 * f.values[n - 1] + 4.0 * f.values[n - 2] -
          f.values[n - 3]) /
         dx2;
  return d;
}

void write_csv(const GridFn& f, std::ostream& os) {
  char buf[64];
  os << "x,value\n";
  for (int j = 0; j <= f.grid.n; ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", f.grid.node(j),
                  f.values[j]);
    os << buf;
  }
}

}  // namespace lpwave
