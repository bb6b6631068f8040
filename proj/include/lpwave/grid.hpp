#ifndef LPWAVE_GRID_HPP
#define LPWAVE_GRID_HPP

#include <Eigen/Core>
#include <functional>
#include <iosfwd>

namespace lpwave {

/// Uniform grid on [0,1] with n cells, nodes x_j = j/n for j = 0..n.
struct Grid {
  int n = 0;

  double dx() const { return 1.0 / n; }
  double node(int j) const { return static_cast<double>(j) / n; }
  int num_nodes() const { return n + 1; }

  bool operator==(const Grid&) const = default;
};

/// A function sampled at the grid nodes. Functions tagged `dirichlet`
/// vanish at both endpoints and admit the 2-periodic odd extension used by
/// the reflection method.
struct GridFn {
  Grid grid;
  Eigen::VectorXd values;
  bool dirichlet = false;

  static GridFn zero(Grid g, bool dirichlet = true);
  static GridFn sample(Grid g, const std::function<double(double)>& f,
                       bool dirichlet = false);
};

/// Throws std::invalid_argument unless f is tagged dirichlet and its
/// endpoint values vanish.
void require_dirichlet(const GridFn& f, const char* who);

/// Value of the 2-periodic odd extension at integer node index m (m may be
/// any integer; node m corresponds to x = m*dx).
double odd_ext_node(const GridFn& f, long long m);

/// Value of the 2-periodic even extension at integer node index m.
double even_ext_node(const GridFn& f, long long m);

/// Odd 2-periodic extension evaluated at a real coordinate x, by reducing x
/// into [0,1] through the two reflections and interpolating linearly
/// between nodes.
double extend_odd_periodic(const GridFn& f, double x);

/// Even 2-periodic extension at a real coordinate (no dirichlet
/// requirement); used for the damping coefficient and for derivatives of
/// odd extensions.
double extend_even_periodic(const GridFn& f, double x);

/// Integral of the piecewise-linear odd 2-periodic extension over [a, b].
/// Exact for the interpolant (trapezoid over full cells plus linear end
/// segments).
double integrate_odd_periodic(const GridFn& f, double a, double b);

/// L^p norm over [0,1]: composite trapezoid for finite p, max of |values|
/// for p = infinity. Requires p >= 1.
double lp_norm(const GridFn& f, double p);

/// Node samples of f' by centered differences, second-order one-sided at
/// the two boundary nodes.
Eigen::VectorXd finite_diff(const GridFn& f);

/// Node samples of f'' (3-point stencil inside, second-order one-sided at
/// the boundary nodes).
Eigen::VectorXd second_diff(const GridFn& f);

/// Two-column CSV (x,value) with 17 significant digits.
void write_csv(const GridFn& f, std::ostream& os);

}  // namespace lpwave

#endif
