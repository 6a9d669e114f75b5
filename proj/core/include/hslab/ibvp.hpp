#pragma once

#include <optional>
#include <vector>

#include "hslab/dsk.hpp"
#include "hslab/dynamics.hpp"
#include "hslab/interval.hpp"

// Initial boundary value problems on (0, 1/2): extend the data oddly, evolve
// on the circle, restrict back. Boundary values are measured, never
// enforced; the homogeneous conditions at x = 0 and x = 1/2 emerge from the
// preserved odd symmetry. Interval resolution is n/2, so restriction is
// sample-exact and the diagnostics carry no interpolation error.

namespace hslab {

enum class IbvpKind { Mhs, MhsDsk, Hs2, MuhsDemo };

struct IbvpProblem {
  IbvpKind kind = IbvpKind::Mhs;
  IntervalFunction u0;
  std::optional<IntervalFunction> rho0;  // hs2 only
  int p = 1;                             // mhs kinds, odd
  int k = 0;                             // mhs-dsk only
  Controls controls;                     // kappa rides in controls for hs2
};

struct IntervalSnapshot {
  double t = 0.0;
  IntervalFunction u;
  std::optional<IntervalFunction> rho;
};

struct BoundaryResidualSample {
  double t = 0.0;
  double u_left = 0.0;    // |u(t, 0)|
  double u_right = 0.0;   // |u(t, 1/2)|
  std::optional<double> rho_left;
  std::optional<double> rho_right;
};

struct PersistenceSample {
  double t = 0.0;
  double u_h1_interval = 0.0;  // trapezoid of u^2 + u_x^2 on [0, 1/2], sqrt
  double u_h1_circle = 0.0;    // the dominating circle norm
  std::optional<double> rho_l2_interval;
  std::optional<double> rho_l2_circle;
};

// Residuals of the even-order endpoint derivatives u^(2k-2j)(t, 0), (t, 1/2).
// The stencil numbers realize the trace conditions on sampled data; the
// spectral numbers evaluate the same derivatives through the circle
// representation at the tie nodes and isolate the symmetry content from the
// finite-difference truncation error, which grows as the profile steepens.
struct DskResidualSample {
  double t = 0.0;
  struct PerOrder {
    int order = 0;
    double stencil_left = 0.0;
    double stencil_right = 0.0;
    double spectral_left = 0.0;
    double spectral_right = 0.0;
  };
  std::vector<PerOrder> orders;
};

struct IbvpSolution {
  IbvpKind kind = IbvpKind::Mhs;
  Trajectory circle;  // full circle-side trajectory (slope series is per step)
  std::vector<IntervalSnapshot> interval;
  std::vector<BoundaryResidualSample> boundary_residuals;
  std::vector<PersistenceSample> persistence;
  std::vector<DskResidualSample> dsk_residuals;  // mhs-dsk only
};

IbvpSolution solve_ibvp_mhs(const IbvpProblem& prob);
IbvpSolution solve_ibvp_dsk(const IbvpProblem& prob);
IbvpSolution solve_ibvp_hs2(const IbvpProblem& prob);

// Interval-side blow-up verdict. Verifies the evenness identity
// min_S u~_x = min_{[0,1/2]} u_x at every recorded step to `identity_tol`
// (the two minima are the same number for odd solutions) and returns the
// report with t_detect read from the interval-side series.
BlowupReport interval_blowup_report(const IbvpSolution& sol,
                                    double identity_tol = 1e-9);

// Largest gap between circle-side and interval-side slope minima over the run.
double max_slope_evenness_gap(const IbvpSolution& sol);

const std::vector<PersistenceSample>& persistence_series(const IbvpSolution& sol);

// Runs the mu-variant and the p = 1 equation from the identical odd
// extension and reports how far they drift apart; mu(u~) stays zero, which is
// exactly why the extension procedure can only ever produce the plain
// equation.
struct MuComparisonReport {
  double max_deviation = 0.0;       // sup-norm gap over common sample times
  double max_abs_mean = 0.0;        // max over time of |mu(u~)|
  std::vector<double> times;
  std::vector<double> deviation;
  std::vector<double> mean_series;
};

MuComparisonReport mu_obstruction_demo(const IntervalFunction& u0,
                                       const Controls& controls);

// Same comparison from arbitrary (not necessarily odd) circle data; with
// mu(u0) != 0 the two flows genuinely differ.
MuComparisonReport mu_vs_hs_direct(const GridFunction& u0, const Controls& controls);

}  // namespace hslab
