#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hslab/grid.hpp"
#include "hslab/spectral.hpp"

// Periodic evolution engines for the modified Hunter-Saxton equation
// (odd p >= 1), the two-component Hunter-Saxton system (a = 2, kappa > 0)
// and the mu-variant. Fourier collocation in space with 2/3-rule dealiasing
// after every nonlinear product, classical RK4 in time with a CFL-limited
// step. Each integration is single-threaded and deterministic; states are
// value types, so parameter sweeps may run runs concurrently.

namespace hslab {

// ---------------------------------------------------------------------------
// States

// State for (u_t + u^p u_x)_x = (p/2) u^{p-1} u_x^2, evolved in the nonlocal
// form u_t = -u^p u_x + (1/2) dx^{-1}( d(u^p)/dx * u_x ) with the mean-zero
// antiderivative. p must be odd (odd data then stays odd); even p is
// accepted only through the explicit unsupported_regime constructor for
// circle-only exploration.
struct MhsState {
  GridFunction u;
  int p = 1;

  MhsState(GridFunction u_in, int p_in) : u(std::move(u_in)), p(p_in) {
    if (p < 1 || p % 2 == 0)
      throw std::invalid_argument("MhsState: p must be an odd positive integer");
  }
  static MhsState unsupported_regime(GridFunction u_in, int p_in) {
    MhsState s(std::move(u_in), 1);
    if (p_in < 1) throw std::invalid_argument("MhsState: p must be positive");
    s.p = p_in;
    return s;
  }
};

// State for the two-component system in the paper's own variables
//   m_t = -u m_x - 2 u_x m - kappa rho rho_x,   m = -u_xx,
//   rho_t = -(rho u)_x,
// with u recovered from m spectrally. m carries no k = 0 information, so the
// (conserved) mean of u rides along as a constant.
struct Hs2State {
  GridFunction m;
  GridFunction rho;
  double u_mean = 0.0;

  Hs2State(GridFunction m_in, GridFunction rho_in, double u_mean_in);
};

// State for -u_txx = -2 mu(u) u_x + 2 u_x u_xx + u u_xxx, evolved through the
// momentum n = mu(u) - u_xx of the inertia operator mu - dx^2.
struct MuhsState {
  GridFunction u;
  explicit MuhsState(GridFunction u_in) : u(std::move(u_in)) {}
};

// ---------------------------------------------------------------------------
// Controls and records

struct Controls {
  double dt_init = 1e-3;
  double t_end = 0.1;
  double cfl = 0.4;                       // in (0, 1]
  double kappa = 1.0;                     // 2HS coupling, must be > 0
  double blowup_slope_threshold = -1e6;   // halt when min u_x falls below
  double dealias_fraction = kDefaultDealiasFraction;
  int sample_stride = 1;                  // store every stride-th state

  void validate() const;
};

enum class HaltReason { TEndReached, SlopeThreshold, DtUnderflow, NonfiniteValue };
const char* to_string(HaltReason r);

struct InvariantSample {
  double t = 0.0;
  double mean_u = 0.0;
  double energy = 0.0;           // int u_x^2 dx
  double min_slope = 0.0;        // min over circle nodes of u_x
  double sup_abs_u = 0.0;
  // 2HS only: int (u_x^2 + kappa rho^2) dx and int rho^2 dx
  std::optional<double> two_component_energy;
  std::optional<double> rho_l2_squared;
};

struct SlopeSample {
  double t = 0.0;
  double min_circle = 0.0;     // min over all circle nodes of u_x
  double min_interval = 0.0;   // min over the nodes in [0, 1/2]
};

struct Snapshot {
  double t = 0.0;
  GridFunction u;
  std::optional<GridFunction> rho;
  std::optional<GridFunction> m;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;          // stored every sample_stride steps
  std::vector<InvariantSample> invariants;  // one per snapshot
  std::vector<SlopeSample> slope_series;    // every accepted step
  HaltReason halt = HaltReason::TEndReached;
  double t_final = 0.0;
  long steps = 0;

  const Snapshot& final_snapshot() const { return snapshots.back(); }
};

struct BlowupReport {
  bool detected = false;
  std::optional<double> t_detect;
  std::vector<SlopeSample> min_slope_series;
  HaltReason halted_reason = HaltReason::TEndReached;
};

// ---------------------------------------------------------------------------
// Right-hand sides

// du/dt = -u^p u_x + (1/2) dx^{-1}( d(u^p)/dx * u_x ). The returned field has
// circle mean zero, so mean(u) is a constant of the motion. Differentiating
// it reproduces the local form u_tx + (p/2) u^{p-1} u_x^2 + u^p u_xx
// = -(1/2) mu(p u^{p-1} u_x^2): inverting dx on the circle pins the
// spatially constant term through the zero-mean constraint on u_tx.
GridFunction mhs_rhs(const MhsState& state,
                     double dealias_fraction = kDefaultDealiasFraction);

// (dm/dt, drho/dt) for the two-component system. dm/dt is projected back to
// mean zero (the analytic identity int (u m_x + 2 u_x m + kappa rho rho_x) = 0
// holds to round-off already; the projection guards against drift).
std::pair<GridFunction, GridFunction> hs2_rhs(
    const Hs2State& state, double kappa,
    double dealias_fraction = kDefaultDealiasFraction);

// u with -u_xx = m and mean(u) = u_mean; rejects m with |mean(m)| > 1e-10.
GridFunction reconstruct_u(const GridFunction& m, double u_mean);

// du/dt for the mu-variant, via n = mu(u) - u_xx, dn/dt = -u n_x - 2 u_x n,
// and inversion of the inertia operator (k = 0 mode of du/dt equals the
// k = 0 mode of dn/dt, which vanishes analytically: mu(u) is conserved).
GridFunction muhs_rhs(const MuhsState& state,
                      double dealias_fraction = kDefaultDealiasFraction);

// ---------------------------------------------------------------------------
// Time stepping

// Classical 4-stage Runge-Kutta for any state supporting + and scalar *.
template <class S, class Rhs>
S rk4_step(const S& y, double dt, Rhs&& rhs) {
  const S k1 = rhs(y);
  const S k2 = rhs(y + 0.5 * dt * k1);
  const S k3 = rhs(y + 0.5 * dt * k2);
  const S k4 = rhs(y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const MhsState& initial, const Controls& controls);
Trajectory integrate(const Hs2State& initial, const Controls& controls);
Trajectory integrate(const MuhsState& initial, const Controls& controls);

// ---------------------------------------------------------------------------
// Blow-up

// Exact blow-up time of the slope Riccati equation for p = 1. Along
// characteristics of the mean-zero-closure flow, w = u_x obeys
//   dw/dt = -(1/2) (w^2 + E),   E = int u_x^2 dx   (conserved),
// because u_tx = -(1/2) u_x^2 - u u_xx + C and the constant is forced to
// C = -E/2 by mu(u_tx) = 0 on the circle. For E > 0 every slope diverges to
// -infinity in finite time
//   T = (2/sqrt(E)) * (pi/2 + atan(w0/sqrt(E))),
// and the solution breaks at T computed from w0 = min u_0'. For E = 0 the
// equation degenerates to dw/dt = -w^2/2: T = 2/|w0| when w0 < 0, no blow-up
// otherwise. Returns nullopt for "no blow-up".
std::optional<double> riccati_blowup_time(double w0, double energy);

// Reads the halt reason and the every-step slope series out of a trajectory.
// Detected means: halted on the slope threshold, or on dt underflow with a
// monotonically decreasing min-slope tail.
BlowupReport detect_blowup(const Trajectory& traj, const Controls& controls);

}  // namespace hslab
