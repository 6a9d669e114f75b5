#include "hslab/ibvp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hslab/spectral.hpp"
#include "hslab/stencil.hpp"

namespace hslab {

namespace {

// Trapezoid rule on the interval samples; exact enough because the integrand
// is smooth and the endpoints carry weight 1/2.
double trapezoid_half(const std::vector<double>& vals, double h) {
  double s = 0.5 * (vals.front() + vals.back());
  for (size_t j = 1; j + 1 < vals.size(); ++j) s += vals[j];
  return s * h;
}

double interval_h1_squared(const GridFunction& u, const GridFunction& ux) {
  const int half = u.grid.half_index();
  std::vector<double> integrand(half + 1);
  for (int j = 0; j <= half; ++j)
    integrand[j] = u.v[j] * u.v[j] + ux.v[j] * ux.v[j];
  return trapezoid_half(integrand, u.grid.dx());
}

double circle_h1_squared(const GridFunction& u, const GridFunction& ux) {
  double s = 0.0;
  for (int j = 0; j < u.n(); ++j) s += u.v[j] * u.v[j] + ux.v[j] * ux.v[j];
  return s / u.n();
}

double interval_l2_squared(const GridFunction& r) {
  const int half = r.grid.half_index();
  std::vector<double> integrand(half + 1);
  for (int j = 0; j <= half; ++j) integrand[j] = r.v[j] * r.v[j];
  return trapezoid_half(integrand, r.grid.dx());
}

double circle_l2_squared(const GridFunction& r) {
  double s = 0.0;
  for (double a : r.v) s += a * a;
  return s / r.n();
}

// Even-order spectral derivative (order 0, 2, 4, ...) via repeated deriv(.,2).
GridFunction even_spectral_derivative(const GridFunction& u, int order) {
  GridFunction out = u;
  for (int i = 0; i < order / 2; ++i) out = deriv(out, 2);
  return out;
}

void fill_series(IbvpSolution& sol, const Controls& controls, int dsk_k) {
  for (const Snapshot& snap : sol.circle.snapshots) {
    const int half = snap.u.grid.half_index();
    const GridFunction ux = deriv(snap.u, 1);

    IntervalSnapshot isnap;
    isnap.t = snap.t;
    isnap.u = restrict_to_interval(snap.u);
    if (snap.rho) isnap.rho = restrict_to_interval(*snap.rho);
    sol.interval.push_back(std::move(isnap));

    BoundaryResidualSample bres;
    bres.t = snap.t;
    bres.u_left = std::abs(snap.u.v[0]);
    bres.u_right = std::abs(snap.u.v[half]);
    if (snap.rho) {
      bres.rho_left = std::abs(snap.rho->v[0]);
      bres.rho_right = std::abs(snap.rho->v[half]);
    }
    sol.boundary_residuals.push_back(bres);

    PersistenceSample pers;
    pers.t = snap.t;
    pers.u_h1_interval = std::sqrt(interval_h1_squared(snap.u, ux));
    pers.u_h1_circle = std::sqrt(circle_h1_squared(snap.u, ux));
    if (snap.rho) {
      pers.rho_l2_interval = std::sqrt(interval_l2_squared(*snap.rho));
      pers.rho_l2_circle = std::sqrt(circle_l2_squared(*snap.rho));
    }
    sol.persistence.push_back(pers);

    if (dsk_k >= 0) {
      DskResidualSample dres;
      dres.t = snap.t;
      const IntervalFunction rest = sol.interval.back().u;
      const int width = std::min(2 * dsk_k + 6, rest.m + 1);
      for (int j = 0; j <= dsk_k; ++j) {
        DskResidualSample::PerOrder per;
        per.order = 2 * dsk_k - 2 * j;
        per.stencil_left =
            std::abs(endpoint_derivative(rest, per.order, /*right=*/false, width));
        per.stencil_right =
            std::abs(endpoint_derivative(rest, per.order, /*right=*/true, width));
        const GridFunction d = even_spectral_derivative(snap.u, per.order);
        per.spectral_left = std::abs(d.v[0]);
        per.spectral_right = std::abs(d.v[half]);
        dres.orders.push_back(per);
      }
      sol.dsk_residuals.push_back(std::move(dres));
    }
  }
  (void)controls;
}

}  // namespace

IbvpSolution solve_ibvp_mhs(const IbvpProblem& prob) {
  const GridFunction ext = odd_periodic_extend(prob.u0);
  MhsState state(ext, prob.p);
  IbvpSolution sol;
  sol.kind = IbvpKind::Mhs;
  sol.circle = integrate(state, prob.controls);
  fill_series(sol, prob.controls, /*dsk_k=*/-1);
  return sol;
}

IbvpSolution solve_ibvp_dsk(const IbvpProblem& prob) {
  const double scale = std::max(1.0, [&] {
    double m = 0.0;
    for (double a : prob.u0.v) m = std::max(m, std::abs(a));
    return m;
  }());
  const DskReport gate = check_dsk(prob.u0, prob.k, 1e-6 * scale);
  if (!gate.pass) {
    std::ostringstream msg;
    msg << "solve_ibvp_dsk: initial data violates D^s_k with k=" << prob.k
        << ", max endpoint residual " << gate.max_residual();
    throw std::invalid_argument(msg.str());
  }
  const GridFunction ext = odd_periodic_extend(prob.u0);
  MhsState state(ext, prob.p);
  IbvpSolution sol;
  sol.kind = IbvpKind::MhsDsk;
  sol.circle = integrate(state, prob.controls);
  fill_series(sol, prob.controls, prob.k);
  return sol;
}

IbvpSolution solve_ibvp_hs2(const IbvpProblem& prob) {
  if (!prob.rho0)
    throw std::invalid_argument("solve_ibvp_hs2: rho0 is required");
  const GridFunction u_ext = odd_periodic_extend(prob.u0);
  const GridFunction rho_ext = odd_periodic_extend(*prob.rho0);
  const GridFunction m0 = -deriv(u_ext, 2);
  Hs2State state(m0, rho_ext, /*u_mean=*/0.0);
  IbvpSolution sol;
  sol.kind = IbvpKind::Hs2;
  sol.circle = integrate(state, prob.controls);
  fill_series(sol, prob.controls, /*dsk_k=*/-1);
  return sol;
}

double max_slope_evenness_gap(const IbvpSolution& sol) {
  double gap = 0.0;
  for (const SlopeSample& s : sol.circle.slope_series)
    gap = std::max(gap, std::abs(s.min_circle - s.min_interval));
  return gap;
}

BlowupReport interval_blowup_report(const IbvpSolution& sol, double identity_tol) {
  const double gap = max_slope_evenness_gap(sol);
  if (gap > identity_tol) {
    std::ostringstream msg;
    msg << "interval_blowup_report: circle and interval slope minima differ by "
        << gap << " (evenness of u_x should make them equal)";
    throw std::runtime_error(msg.str());
  }
  BlowupReport report;
  report.halted_reason = sol.circle.halt;
  report.min_slope_series = sol.circle.slope_series;
  if (sol.circle.halt == HaltReason::SlopeThreshold) {
    report.detected = true;
  } else if (sol.circle.halt == HaltReason::DtUnderflow) {
    const auto& s = sol.circle.slope_series;
    const size_t tail = std::min<size_t>(5, s.size());
    bool decreasing = tail >= 2;
    for (size_t i = s.size() - tail; i + 1 < s.size(); ++i)
      if (s[i + 1].min_interval >= s[i].min_interval) decreasing = false;
    report.detected = decreasing;
  }
  if (report.detected) report.t_detect = sol.circle.t_final;
  return report;
}

const std::vector<PersistenceSample>& persistence_series(const IbvpSolution& sol) {
  return sol.persistence;
}

namespace {

MuComparisonReport compare_mu_vs_hs(const GridFunction& u0, const Controls& controls) {
  const Trajectory hs = integrate(MhsState(u0, 1), controls);
  const Trajectory mu = integrate(MuhsState(u0), controls);
  MuComparisonReport report;
  const size_t count = std::min(hs.snapshots.size(), mu.snapshots.size());
  for (size_t i = 0; i < count; ++i) {
    const Snapshot& a = hs.snapshots[i];
    const Snapshot& b = mu.snapshots[i];
    if (std::abs(a.t - b.t) > 1e-9) break;  // step sequences diverged
    const double dev = max_abs_diff(a.u, b.u);
    const double mu_val = mean(b.u);
    report.times.push_back(b.t);
    report.deviation.push_back(dev);
    report.mean_series.push_back(mu_val);
    report.max_deviation = std::max(report.max_deviation, dev);
    report.max_abs_mean = std::max(report.max_abs_mean, std::abs(mu_val));
  }
  return report;
}

}  // namespace

MuComparisonReport mu_obstruction_demo(const IntervalFunction& u0,
                                       const Controls& controls) {
  return compare_mu_vs_hs(odd_periodic_extend(u0), controls);
}

MuComparisonReport mu_vs_hs_direct(const GridFunction& u0, const Controls& controls) {
  return compare_mu_vs_hs(u0, controls);
}

}  // namespace hslab
