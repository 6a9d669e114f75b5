#include "doctest.h"

#include <cmath>

#include "hslab/slobodeckij.hpp"
#include "hslab/spectral.hpp"
#include "support.hpp"

using namespace hslab;
using testsupport::kTwoPi;

namespace {

// Brute-force oracle for the squared norm: dense midpoint tensor quadrature
// of the double integral (diagonal cells dropped; their contribution vanishes
// like h^{2-2 sigma}) with one Richardson step, plus Gauss-Legendre for the
// integer part. Works from closed-form derivatives, independent of the
// graded-mesh implementation and of the sampled-data path.
double oracle_norm(const std::function<double(double)>& f,
                   const std::vector<std::function<double(double)>>& derivs,
                   double s) {
  const int n_int = static_cast<int>(std::floor(s));
  const double sigma = s - n_int;
  double integer_part = testsupport::gl_integrate([&](double t) { return f(t) * f(t); },
                                                  0.0, 0.5, 64, 10);
  for (int d = 1; d <= n_int; ++d)
    integer_part += testsupport::gl_integrate(
        [&](double t) { return derivs[d - 1](t) * derivs[d - 1](t); }, 0.0, 0.5, 64, 10);

  const auto& fn = n_int == 0 ? f : derivs[n_int - 1];
  auto dbl = [&](int cells) {
    const double h = 0.5 / cells;
    double acc = 0.0;
    for (int i = 0; i < cells; ++i) {
      const double x = (i + 0.5) * h;
      for (int j = 0; j < cells; ++j) {
        if (i == j) continue;
        const double y = (j + 0.5) * h;
        const double diff = fn(x) - fn(y);
        acc += diff * diff / std::pow(std::abs(x - y), 1.0 + 2.0 * sigma) * h * h;
      }
    }
    return acc;
  };
  const double coarse = dbl(512);
  const double fine = dbl(1024);
  const double richardson = 2.0 * fine - coarse;  // leading error ~ h for sigma = 1/2
  return std::sqrt(integer_part + richardson);
}

}  // namespace

TEST_CASE("zero data gives zero norm") {
  const SlobodeckijResult r = slobodeckij_norm(IntervalFunction::zeros(64), 1.5);
  CHECK(r.value == 0.0);
}

TEST_CASE("v = x at s = 3/2: frozen oracle value") {
  // f' is constant, so the Gagliardo term vanishes and the squared norm is
  // int x^2 + int 1 = 1/24 + 1/2 = 13/24. The dense-tensor oracle agrees.
  const double frozen = std::sqrt(13.0 / 24.0);  // 0.73598007219...
  const double oracle = oracle_norm([](double t) { return t; },
                                    {[](double) { return 1.0; }}, 1.5);
  CHECK(oracle == doctest::Approx(frozen).epsilon(1e-6));

  const IntervalFunction v = sample_interval(256, [](double x) { return x; });
  const SlobodeckijResult r = slobodeckij_norm(v, 1.5);
  CHECK(r.value == doctest::Approx(frozen).epsilon(1e-9));
  CHECK(r.double_integral < 1e-12);
  CHECK(r.error_estimate < 1e-9);
}

TEST_CASE("v = sin at s = 3/2: stable under refinement, oracle-pinned") {
  const IntervalFunction v =
      sample_interval(512, [](double x) { return std::sin(kTwoPi * x); });

  QuadratureSpec coarse;
  coarse.x_cells = 16;
  const SlobodeckijResult r16 = slobodeckij_norm(v, 1.5, coarse);
  QuadratureSpec fine;
  fine.x_cells = 32;
  const SlobodeckijResult r32 = slobodeckij_norm(v, 1.5, fine);

  // frozen from the dense tensor quadrature oracle with Richardson
  // extrapolation (and reproduced by the graded-mesh rule at two levels)
  const double frozen = 15.6129158;
  CHECK(r32.value == doctest::Approx(frozen).epsilon(1e-5));
  CHECK(std::abs(r32.value - r16.value) < 1e-6 * frozen);
  CHECK(r32.error_estimate < 1e-4 * frozen);

  const double oracle = oracle_norm(
      [](double t) { return std::sin(kTwoPi * t); },
      {[](double t) { return kTwoPi * std::cos(kTwoPi * t); }}, 1.5);
  CHECK(r32.value == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("interval norm is equivalent (not equal) to the circle norm of the extension") {
  // The interval Slobodeckij norm and ||.||_{H^s(S)}/sqrt(2) of the odd
  // extension are equivalent norms; for sin the ratio sits near 1.95, far
  // from 1 but stable. Both finiteness and the observed constant are pinned.
  const IntervalFunction v =
      sample_interval(512, [](double x) { return std::sin(kTwoPi * x); });
  const SlobodeckijResult r = slobodeckij_norm(v, 1.5);
  const GridFunction ext = odd_periodic_extend(v);
  const double circle = sobolev_norm_circle(ext, 1.5) / std::sqrt(2.0);
  const double ratio = r.value / circle;
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.2);
}

TEST_CASE("integer s is rejected") {
  const IntervalFunction v = sample_interval(64, [](double x) { return x; });
  CHECK_THROWS_AS(slobodeckij_norm(v, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(slobodeckij_norm(v, 0.0), std::invalid_argument);
}

TEST_CASE("sigma near 1: graded bands still converge (spot check)") {
  const IntervalFunction v =
      sample_interval(256, [](double x) { return std::sin(kTwoPi * x); });
  const SlobodeckijResult r = slobodeckij_norm(v, 1.9);
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 0.0);
  CHECK(r.error_estimate < 1e-3 * r.value);
}
