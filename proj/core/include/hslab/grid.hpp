#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hslab {

// Uniform collocation grid on the unit circle S = R/Z with nodes x_j = j/n.
// n must be even and >= 8 so that both tie points x = 0 and x = 1/2 are
// grid nodes; all boundary diagnostics read samples directly, never
// interpolate.
struct Grid {
  int n = 0;

  Grid() = default;
  explicit Grid(int n_in) : n(n_in) {
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument("Grid: n must be even and >= 8, got n=" +
                                  std::to_string(n));
  }

  double dx() const { return 1.0 / n; }
  double node(int j) const { return static_cast<double>(j) / n; }
  int half_index() const { return n / 2; }  // index of x = 1/2

  bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int n) { return Grid(n); }

// Real 1-periodic function sampled at the grid nodes.
struct GridFunction {
  Grid grid;
  std::vector<double> v;

  GridFunction() = default;
  GridFunction(Grid g, std::vector<double> values)
      : grid(g), v(std::move(values)) {
    if (static_cast<int>(v.size()) != grid.n)
      throw std::invalid_argument("GridFunction: value count != grid.n");
  }
  static GridFunction zeros(Grid g) {
    return GridFunction(g, std::vector<double>(g.n, 0.0));
  }

  int n() const { return grid.n; }
  double& operator[](int j) { return v[j]; }
  double operator[](int j) const { return v[j]; }

  bool all_finite() const {
    for (double a : v)
      if (!std::isfinite(a)) return false;
    return true;
  }
};

template <class F>
GridFunction sample(Grid g, F&& f) {
  GridFunction out = GridFunction::zeros(g);
  for (int j = 0; j < g.n; ++j) out.v[j] = f(g.node(j));
  return out;
}

// Value-semantics arithmetic; enough for Runge-Kutta stage combinations.
inline GridFunction& operator+=(GridFunction& a, const GridFunction& b) {
  for (int j = 0; j < a.n(); ++j) a.v[j] += b.v[j];
  return a;
}
inline GridFunction operator+(GridFunction a, const GridFunction& b) {
  a += b;
  return a;
}
inline GridFunction operator-(GridFunction a, const GridFunction& b) {
  for (int j = 0; j < a.n(); ++j) a.v[j] -= b.v[j];
  return a;
}
inline GridFunction operator*(double s, GridFunction a) {
  for (double& x : a.v) x *= s;
  return a;
}
inline GridFunction operator-(GridFunction a) { return -1.0 * std::move(a); }

inline double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (double a : f.v) m = std::max(m, std::abs(a));
  return m;
}
inline double min_value(const GridFunction& f) {
  double m = f.v.empty() ? 0.0 : f.v[0];
  for (double a : f.v) m = std::min(m, a);
  return m;
}
inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (int j = 0; j < a.n(); ++j) m = std::max(m, std::abs(a.v[j] - b.v[j]));
  return m;
}

}  // namespace hslab
