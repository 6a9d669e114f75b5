#pragma once

#include <string>

#include "hslab/grid.hpp"

// Interval data on [0, 1/2] and the odd periodic extension machinery that
// turns an initial boundary value problem on (0, 1/2) into a periodic Cauchy
// problem on the circle. Interval resolution is tied to circle resolution
// (m = n/2) so restriction is sample-exact; there is no interpolation
// anywhere on this path.

namespace hslab {

// Real function sampled at x_j = j/(2m), j = 0..m, on [0, 1/2].
struct IntervalFunction {
  int m = 0;                 // subinterval count
  std::vector<double> v;     // m + 1 samples

  IntervalFunction() = default;
  IntervalFunction(int m_in, std::vector<double> values)
      : m(m_in), v(std::move(values)) {
    if (m < 1) throw std::invalid_argument("IntervalFunction: m must be positive");
    if (static_cast<int>(v.size()) != m + 1)
      throw std::invalid_argument("IntervalFunction: expected m+1 samples");
  }
  static IntervalFunction zeros(int m) {
    return IntervalFunction(m, std::vector<double>(m + 1, 0.0));
  }

  double node(int j) const { return static_cast<double>(j) / (2 * m); }
  double h() const { return 1.0 / (2 * m); }
  bool all_finite() const {
    for (double a : v)
      if (!std::isfinite(a)) return false;
    return true;
  }
  bool compatible(const Grid& g) const { return 2 * m == g.n; }
};

template <class F>
IntervalFunction sample_interval(int m, F&& f) {
  IntervalFunction out = IntervalFunction::zeros(m);
  for (int j = 0; j <= m; ++j) out.v[j] = f(out.node(j));
  return out;
}

// Odd periodic extension: u~(x_j) = v(x_j) on [0,1/2], u~(x_j) = -v(1-x_j)
// beyond. Requires trace-zero data (|v(0)|, |v(1/2)| <= 1e-12) and m >= 4;
// the result is odd about 0 and about 1/2 bit-exactly and has mean zero.
GridFunction odd_periodic_extend(const IntervalFunction& v);

// Copy samples j = 0..n/2. Left inverse of odd_periodic_extend, bit-exact.
IntervalFunction restrict_to_interval(const GridFunction& f);

// Two-column text exchange format with header line `# interval-function m=<m>`.
// Node abscissae are validated against j/(2m); anything else is rejected.
void write_interval_function(const IntervalFunction& v, const std::string& path);
IntervalFunction read_interval_function(const std::string& path);

}  // namespace hslab
