#pragma once

#include <span>
#include <vector>

// Finite-difference weights on arbitrary nodes (Fornberg's recurrence) and
// the endpoint-derivative evaluations built on them. Used for the trace
// conditions of the D^s_k spaces and for derivative evaluation of sampled
// interval data inside the fractional-norm quadrature.

namespace hslab {

// Weights w such that sum_i w[i] f(nodes[i]) approximates f^(order)(x0).
// Exact for polynomials of degree < nodes.size(); accuracy order is
// nodes.size() - order on smooth data.
std::vector<double> fd_weights(int order, double x0, std::span<const double> nodes);

struct IntervalFunction;

// One-sided approximation of v^(order) at the left (x=0) or right (x=1/2)
// endpoint of interval data, using `width` samples from that end.
double endpoint_derivative(const IntervalFunction& v, int order, bool right,
                           int width);

}  // namespace hslab
