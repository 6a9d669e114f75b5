#include "hslab/dsk.hpp"

#include <stdexcept>

#include "hslab/stencil.hpp"

namespace hslab {

DskReport check_dsk(const IntervalFunction& v, int k, double tol) {
  if (k < 0) throw std::invalid_argument("check_dsk: k must be nonnegative");
  if (v.m < 2 * k + 2)
    throw std::invalid_argument("check_dsk: m too small for the stencil (need m >= 2k+2)");
  const int width = std::min(2 * k + 6, v.m + 1);
  DskReport report;
  report.k = k;
  report.tol = tol;
  report.pass = true;
  for (int j = 0; j <= k; ++j) {
    DskReport::Condition cond;
    cond.derivative_order = 2 * k - 2 * j;
    cond.residual_left =
        std::abs(endpoint_derivative(v, cond.derivative_order, /*right=*/false, width));
    cond.residual_right =
        std::abs(endpoint_derivative(v, cond.derivative_order, /*right=*/true, width));
    if (cond.residual_left > tol || cond.residual_right > tol) report.pass = false;
    report.conditions.push_back(cond);
  }
  return report;
}

}  // namespace hslab
