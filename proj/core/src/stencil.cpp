#include "hslab/stencil.hpp"

#include <stdexcept>

#include "hslab/interval.hpp"

namespace hslab {

std::vector<double> fd_weights(int order, double x0, std::span<const double> nodes) {
  const int nn = static_cast<int>(nodes.size());
  if (order < 0 || nn <= order)
    throw std::invalid_argument("fd_weights: need more nodes than the derivative order");
  // Fornberg (1988), Mathematics of Computation 51: weights for all
  // derivative orders up to `order` on incrementally added nodes.
  std::vector<std::vector<std::vector<double>>> d(
      order + 1, std::vector<std::vector<double>>(nn, std::vector<double>(nn, 0.0)));
  d[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < nn; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      for (int m = 0; m <= std::min(i, order); ++m) {
        d[m][i][j] = ((nodes[i] - x0) * d[m][i - 1][j] -
                      (m > 0 ? m * d[m - 1][i - 1][j] : 0.0)) /
                     c3;
      }
    }
    for (int m = 0; m <= std::min(i, order); ++m) {
      d[m][i][i] = (c1 / c2) * ((m > 0 ? m * d[m - 1][i - 1][i - 1] : 0.0) -
                                (nodes[i - 1] - x0) * d[m][i - 1][i - 1]);
    }
    c1 = c2;
  }
  std::vector<double> w(nn);
  for (int j = 0; j < nn; ++j) w[j] = d[order][nn - 1][j];
  return w;
}

double endpoint_derivative(const IntervalFunction& v, int order, bool right,
                           int width) {
  if (width > v.m + 1)
    throw std::invalid_argument("endpoint_derivative: stencil wider than the data");
  if (order == 0) return right ? v.v[v.m] : v.v[0];
  const double h = v.h();
  std::vector<double> nodes(width);
  for (int i = 0; i < width; ++i) nodes[i] = i * h;
  std::vector<double> w = fd_weights(order, 0.0, nodes);
  double acc = 0.0;
  if (!right) {
    for (int i = 0; i < width; ++i) acc += w[i] * v.v[i];
  } else {
    // Mirror the stencil: nodes 1/2, 1/2 - h, ... with sign (-1)^order.
    for (int i = 0; i < width; ++i) acc += w[i] * v.v[v.m - i];
    if (order % 2 == 1) acc = -acc;
  }
  return acc;
}

}  // namespace hslab
