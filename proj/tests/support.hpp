#pragma once

// Shared test oracles. These deliberately avoid the FFT code paths they
// check: the naive DFT sums the Fourier series directly, the quadrature
// primitives integrate the trigonometric interpolant with Gauss-Legendre
// cells, and the scalar ODE integrator is plain RK4 on doubles.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "hslab/grid.hpp"
#include "hslab/spectral.hpp"

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// O(n^2) discrete Fourier coefficients, convention c_k = (1/n) sum f_j e^{-2pi i k x_j}.
inline std::vector<std::complex<double>> naive_coeffs(const hslab::GridFunction& f) {
  const int n = f.n();
  std::vector<std::complex<double>> c(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phase = -kTwoPi * k * j / static_cast<double>(n);
      acc += f.v[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    c[k] = acc / static_cast<double>(n);
  }
  return c;
}

// Evaluate the trigonometric interpolant of f anywhere (Nyquist as cosine).
inline double eval_interpolant(const std::vector<std::complex<double>>& c, int n,
                               double x) {
  double acc = c[0].real();
  for (int k = 1; k < n / 2; ++k) {
    const std::complex<double> e(std::cos(kTwoPi * k * x), std::sin(kTwoPi * k * x));
    acc += 2.0 * (c[k] * e).real();
  }
  acc += (c[n / 2] * std::complex<double>(std::cos(kTwoPi * (n / 2) * x),
                                          -std::sin(kTwoPi * (n / 2) * x)))
             .real();
  return acc;
}

// Derivative through the naive coefficient route (independent of the FFT).
inline hslab::GridFunction naive_deriv(const hslab::GridFunction& f, int order) {
  const int n = f.n();
  const auto c = naive_coeffs(f);
  hslab::GridFunction out = hslab::GridFunction::zeros(f.grid);
  for (int j = 0; j < n; ++j) {
    const double x = f.grid.node(j);
    double acc = 0.0;
    for (int k = 1; k < n / 2; ++k) {
      const auto mult = std::pow(std::complex<double>(0.0, kTwoPi * k), order);
      const std::complex<double> e(std::cos(kTwoPi * k * x), std::sin(kTwoPi * k * x));
      acc += 2.0 * (mult * c[k] * e).real();
    }
    if (order % 2 == 0) {
      const double w = std::pow(kTwoPi * (n / 2), order);
      const double sgn = (order % 4 == 0) ? 1.0 : -1.0;
      acc += sgn * w *
             (c[n / 2] * std::complex<double>(std::cos(kTwoPi * (n / 2) * x),
                                              -std::sin(kTwoPi * (n / 2) * x)))
                 .real();
    }
    out.v[j] = acc;
  }
  return out;
}

// Composite Gauss-Legendre integration of a callable.
inline double gl_integrate(const std::function<double(double)>& f, double a, double b,
                           int cells = 64, int points = 10) {
  static std::vector<double> gx, gw;
  static int cached_points = 0;
  if (cached_points != points) {
    gx.assign(points, 0.0);
    gw.assign(points, 0.0);
    for (int i = 0; i < points; ++i) {
      double t = std::cos(kPi * (i + 0.75) / (points + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= points; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = points * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = points * (t * p1 - p0) / (t * t - 1.0);
      gx[i] = t;
      gw[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    cached_points = points;
  }
  double total = 0.0;
  const double h = (b - a) / cells;
  for (int c = 0; c < cells; ++c) {
    const double mid = a + (c + 0.5) * h;
    double acc = 0.0;
    for (int q = 0; q < points; ++q) acc += gw[q] * f(mid + 0.5 * h * gx[q]);
    total += 0.5 * h * acc;
  }
  return total;
}

// The antiderivative formula with an explicit base point a:
//   P(x) = int_a^x f dy - int_0^1 int_a^y f dz dy,
// evaluated by quadrature of the trigonometric interpolant of f. For
// mean-zero f this is the periodic mean-zero primitive, independent of a.
inline hslab::GridFunction antideriv_by_quadrature(const hslab::GridFunction& f,
                                                   double base_point) {
  const auto c = naive_coeffs(f);
  const int n = f.n();
  auto interp = [&](double x) { return eval_interpolant(c, n, x); };
  auto primitive = [&](double y) {
    return gl_integrate(interp, base_point, y, 48, 10);
  };
  const double correction = gl_integrate(primitive, 0.0, 1.0, 48, 10);
  hslab::GridFunction out = hslab::GridFunction::zeros(f.grid);
  for (int j = 0; j < n; ++j) out.v[j] = primitive(f.grid.node(j)) - correction;
  return out;
}

// Random real trigonometric polynomial with modes 1..max_mode (mean zero; odd
// part only when `odd` is set, even part only when `even` is set).
inline hslab::GridFunction random_trig(hslab::Grid grid, int max_mode,
                                       std::mt19937_64& rng, bool odd = true,
                                       bool even = true) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> a(max_mode + 1, 0.0), b(max_mode + 1, 0.0);
  for (int k = 1; k <= max_mode; ++k) {
    if (odd) a[k] = gauss(rng) / k;
    if (even) b[k] = gauss(rng) / k;
  }
  return hslab::sample(grid, [&](double x) {
    double acc = 0.0;
    for (int k = 1; k <= max_mode; ++k)
      acc += a[k] * std::sin(kTwoPi * k * x) + b[k] * std::cos(kTwoPi * k * x);
    return acc;
  });
}

// max_j |u(x_j) + u(-x_j)| over the grid: the odd-parity residual.
inline double parity_residual(const hslab::GridFunction& u) {
  const int n = u.n();
  double worst = std::abs(2.0 * u.v[0]);
  for (int j = 1; j < n; ++j)
    worst = std::max(worst, std::abs(u.v[j] + u.v[n - j]));
  return worst;
}

// Plain RK4 on a scalar ODE dw/dt = f(w); integrates until w drops below
// `floor_value` (returns the extrapolated divergence time) or until t_max
// (returns nullopt). Used as the independent check of the closed-form
// blow-up time of dw/dt = -(w^2 + E)/2.
inline std::optional<double> scalar_blowup_time(double w0, double energy,
                                                double t_max = 50.0) {
  auto f = [&](double w) { return -0.5 * (w * w + energy); };
  double w = w0, t = 0.0;
  while (t < t_max) {
    // step size follows the local scale so the divergence is resolved
    const double dt = std::min(1e-4, 0.05 / std::max(1.0, std::abs(w)));
    const double k1 = f(w);
    const double k2 = f(w + 0.5 * dt * k1);
    const double k3 = f(w + 0.5 * dt * k2);
    const double k4 = f(w + dt * k3);
    w += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
    if (w < -1e8) return t + 2.0 / std::abs(w);  // dw/dt ~ -w^2/2 tail
  }
  return std::nullopt;
}

}  // namespace testsupport
