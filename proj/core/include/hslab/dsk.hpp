#pragma once

#include <vector>

#include "hslab/interval.hpp"

// Trace verification for the spaces D^s_k(0,1/2): all even-order derivatives
// v^(2k-2j), j = 0..k, must vanish at both endpoints. Membership of interval
// data in D^s_k is what makes the odd periodic extension preserve regularity
// above s = 5/2.

namespace hslab {

struct DskReport {
  int k = 0;
  double tol = 0.0;
  // One entry per j = 0..k: residuals of v^(2k-2j) at x=0 and x=1/2.
  struct Condition {
    int derivative_order = 0;
    double residual_left = 0.0;
    double residual_right = 0.0;
  };
  std::vector<Condition> conditions;
  bool pass = false;

  double max_residual() const {
    double r = 0.0;
    for (const auto& c : conditions)
      r = std::max({r, c.residual_left, c.residual_right});
    return r;
  }
};

// One-sided finite-difference evaluation of the trace conditions; stencil
// width 2k+6 (accuracy order >= 4 for every tested derivative). Requires
// m >= 2k+2 samples beyond each endpoint.
DskReport check_dsk(const IntervalFunction& v, int k, double tol);

}  // namespace hslab
