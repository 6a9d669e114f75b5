#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "hslab/dsk.hpp"
#include "hslab/interval.hpp"
#include "hslab/spectral.hpp"
#include "hslab/stencil.hpp"
#include "support.hpp"

using namespace hslab;
using testsupport::kTwoPi;

TEST_CASE("odd extension of a restriction of sin recovers sin") {
  const int m = 32;
  const IntervalFunction v =
      sample_interval(m, [](double x) { return std::sin(kTwoPi * x); });
  const GridFunction ext = odd_periodic_extend(v);
  const GridFunction ref =
      sample(Grid(2 * m), [](double x) { return std::sin(kTwoPi * x); });
  CHECK(max_abs_diff(ext, ref) < 1e-14);
}

TEST_CASE("odd extension formula values and bit-exact symmetry") {
  const int m = 16;
  const IntervalFunction v = sample_interval(m, [](double x) { return x * (0.5 - x); });
  const GridFunction ext = odd_periodic_extend(v);
  // u~(-0.125) = u~(0.875) = -v(0.125) = -0.046875
  const int j = static_cast<int>(0.875 * ext.n());
  CHECK(ext.v[j] == -0.046875);
  // parity holds at the bit level by construction
  for (int i = 1; i < ext.n(); ++i) CHECK(ext.v[i] == -ext.v[ext.n() - i]);
  CHECK(ext.v[0] == 0.0);
  // exact zero mean: samples cancel in pairs
  CHECK(std::abs(mean(ext)) < 1e-16);

  const IntervalFunction zero = IntervalFunction::zeros(8);
  CHECK(max_abs(odd_periodic_extend(zero)) == 0.0);
}

TEST_CASE("odd extension rejects nonzero traces and tiny m") {
  const IntervalFunction bad =
      sample_interval(16, [](double x) { return std::cos(kTwoPi * x); });
  CHECK_THROWS_WITH_AS(odd_periodic_extend(bad),
                       doctest::Contains("nonzero boundary trace"),
                       std::invalid_argument);
  const IntervalFunction small = IntervalFunction::zeros(3);
  CHECK_THROWS_AS(odd_periodic_extend(small), std::invalid_argument);
}

TEST_CASE("restrict is the bit-exact left inverse of extend") {
  std::mt19937_64 rng(31);
  const int m = 24;
  IntervalFunction v = IntervalFunction::zeros(m);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int j = 1; j < m; ++j) v.v[j] = gauss(rng);
  const IntervalFunction back = restrict_to_interval(odd_periodic_extend(v));
  REQUIRE(back.m == m);
  for (int j = 0; j <= m; ++j) CHECK(back.v[j] == v.v[j]);
}

TEST_CASE("restrict copies samples of arbitrary circle functions") {
  const Grid g(64);
  const GridFunction c = sample(g, [](double x) { return std::cos(kTwoPi * x); });
  const IntervalFunction rc = restrict_to_interval(c);
  for (int j = 0; j <= 32; ++j) CHECK(rc.v[j] == c.v[j]);

  const GridFunction one = sample(g, [](double) { return 1.0; });
  const IntervalFunction r1 = restrict_to_interval(one);
  for (int j = 0; j <= 32; ++j) CHECK(r1.v[j] == 1.0);
}

TEST_CASE("interval file format round-trips and rejects bad nodes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hslab_interval_io";
  fs::create_directories(dir);
  const std::string path = (dir / "v.txt").string();

  const IntervalFunction v =
      sample_interval(12, [](double x) { return std::sin(kTwoPi * x) * 0.25; });
  write_interval_function(v, path);
  const IntervalFunction r = read_interval_function(path);
  REQUIRE(r.m == v.m);
  for (int j = 0; j <= v.m; ++j) CHECK(r.v[j] == v.v[j]);

  // corrupt a node abscissa
  {
    std::ofstream out(path);
    out << "# interval-function m=4\n";
    out << "0 0\n0.125 1\n0.3 2\n0.375 1\n0.5 0\n";
  }
  CHECK_THROWS_WITH_AS(read_interval_function(path), doctest::Contains("node mismatch"),
                       std::runtime_error);

  // missing header
  {
    std::ofstream out(path);
    out << "0 0\n";
  }
  CHECK_THROWS_AS(read_interval_function(path), std::runtime_error);
}

TEST_CASE("fd_weights reproduce classical stencils") {
  // centered second derivative: [1, -2, 1] / h^2
  const double h = 0.25;
  const std::vector<double> nodes2 = {-h, 0.0, h};
  const std::vector<double> w2 = fd_weights(2, 0.0, nodes2);
  CHECK(w2[0] == doctest::Approx(1.0 / (h * h)).epsilon(1e-12));
  CHECK(w2[1] == doctest::Approx(-2.0 / (h * h)).epsilon(1e-12));
  CHECK(w2[2] == doctest::Approx(1.0 / (h * h)).epsilon(1e-12));

  // one-sided first derivative, five nodes: [-25/12, 4, -3, 4/3, -1/4] / h
  std::vector<double> nodes5(5);
  for (int i = 0; i < 5; ++i) nodes5[i] = i * h;
  const std::vector<double> w1 = fd_weights(1, 0.0, nodes5);
  const double expect[5] = {-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25};
  for (int i = 0; i < 5; ++i)
    CHECK(w1[i] * h == doctest::Approx(expect[i]).epsilon(1e-11));
}

TEST_CASE("check_dsk accepts sin and rejects the parabola at k=1") {
  const int m = 64;
  const IntervalFunction sine =
      sample_interval(m, [](double x) { return std::sin(kTwoPi * x); });
  const DskReport pass = check_dsk(sine, 1, 1e-6);
  CHECK(pass.pass);
  CHECK(pass.conditions.size() == 2);
  CHECK(pass.max_residual() < 1e-6);

  const IntervalFunction poly =
      sample_interval(m, [](double x) { return x * (0.5 - x); });
  const DskReport fail = check_dsk(poly, 1, 1e-6);
  CHECK_FALSE(fail.pass);
  // v'' = -2 at both endpoints; the order-0 conditions still hold
  bool found_two = false;
  for (const auto& c : fail.conditions)
    if (c.derivative_order == 2) {
      CHECK(c.residual_left == doctest::Approx(2.0).epsilon(1e-3));
      CHECK(c.residual_right == doctest::Approx(2.0).epsilon(1e-3));
      found_two = true;
    }
  CHECK(found_two);

  const DskReport zero = check_dsk(IntervalFunction::zeros(m), 2, 1e-12);
  CHECK(zero.pass);
  CHECK(zero.max_residual() == 0.0);

  CHECK_THROWS_AS(check_dsk(IntervalFunction::zeros(4), 2, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("check_dsk accepts x^3 (1/2 - x)^3 at k=1 (nontrivial member)") {
  const int m = 128;
  const IntervalFunction v = sample_interval(m, [](double x) {
    const double y = 0.5 - x;
    return x * x * x * y * y * y;
  });
  CHECK(check_dsk(v, 1, 1e-6).pass);
}
