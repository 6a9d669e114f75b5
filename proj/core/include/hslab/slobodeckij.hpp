#pragma once

#include "hslab/interval.hpp"

// Fractional Sobolev (Slobodeckij) norm of interval data, s = n + sigma with
// integer n >= 0 and sigma in (0,1):
//
//   ||f||^2 = ||f||^2_{H^n(0,1/2)}
//           + iint_{[0,1/2]^2} |f^(n)(x)-f^(n)(y)|^2 / |x-y|^{1+2 sigma} dx dy.
//
// The double integral has an integrable diagonal singularity for sigma < 1;
// it is evaluated on a mesh graded geometrically toward |x-y| = 0. Uniform
// quadrature stalls there.

namespace hslab {

struct QuadratureSpec {
  int x_cells = 32;              // composite Gauss-Legendre cells along x
  int gl_points = 12;            // Gauss-Legendre points per cell
  double grading_ratio = 0.5;    // band shrink factor toward the diagonal
  double inner_band_rel_tol = 1e-8;  // stop when a band contributes less than this
  int max_depth = 220;           // hard cap on the number of graded bands
  int stencil_width = 10;        // samples per derivative-evaluation window
};

struct SlobodeckijResult {
  double value = 0.0;            // the norm
  double error_estimate = 0.0;   // |change under x-mesh refinement|
  double double_integral = 0.0;  // the Gagliardo part of the squared norm
  double integer_part = 0.0;     // ||f||^2_{H^n}
};

SlobodeckijResult slobodeckij_norm(const IntervalFunction& v, double s,
                                   const QuadratureSpec& quad = {});

}  // namespace hslab
