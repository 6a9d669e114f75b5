#include "hslab/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDtUnderflow = 1e-12;

// u^p as repeated dealiased products (p is small and odd).
GridFunction dealiased_power(const GridFunction& u, int p, double fraction) {
  GridFunction acc = dealias(u, fraction);
  for (int i = 1; i < p; ++i) acc = dealiased_product(acc, u, fraction);
  return acc;
}

double min_slope_interval(const GridFunction& ux) {
  const int half = ux.grid.half_index();
  double m = ux.v[0];
  for (int j = 1; j <= half; ++j) m = std::min(m, ux.v[j]);
  return m;
}

}  // namespace

Hs2State::Hs2State(GridFunction m_in, GridFunction rho_in, double u_mean_in)
    : m(std::move(m_in)), rho(std::move(rho_in)), u_mean(u_mean_in) {
  if (m.grid != rho.grid)
    throw std::invalid_argument("Hs2State: m and rho must share a grid");
  const double mm = mean(m);
  if (std::abs(mm) > 1e-8)
    throw std::invalid_argument("Hs2State: mean(m) = " + std::to_string(mm) +
                                " but m = -u_xx of a periodic u is mean-zero");
}

void Controls::validate() const {
  if (dt_init <= 0.0) throw std::invalid_argument("controls: dt_init must be > 0");
  if (t_end <= 0.0) throw std::invalid_argument("controls: t_end must be > 0");
  if (!(cfl > 0.0 && cfl <= 1.0))
    throw std::invalid_argument("controls: cfl must lie in (0, 1]");
  if (kappa <= 0.0) throw std::invalid_argument("controls: kappa must be > 0");
  if (blowup_slope_threshold >= 0.0)
    throw std::invalid_argument("controls: blowup_slope_threshold must be < 0");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw std::invalid_argument("controls: dealias_fraction must lie in (0, 1]");
  if (sample_stride < 1)
    throw std::invalid_argument("controls: sample_stride must be >= 1");
}

const char* to_string(HaltReason r) {
  switch (r) {
    case HaltReason::TEndReached: return "t-end-reached";
    case HaltReason::SlopeThreshold: return "slope-threshold";
    case HaltReason::DtUnderflow: return "dt-underflow";
    case HaltReason::NonfiniteValue: return "nonfinite-value";
  }
  return "unknown";
}

GridFunction mhs_rhs(const MhsState& state, double fraction) {
  if (!state.u.all_finite())
    throw std::invalid_argument("mhs_rhs: nonfinite values in u");
  const GridFunction ux = deriv(state.u, 1);
  const GridFunction up = dealiased_power(state.u, state.p, fraction);
  const GridFunction upx = deriv(up, 1);
  const GridFunction transport = dealiased_product(up, ux, fraction);
  const GridFunction source = dealiased_product(upx, ux, fraction);
  return -transport + 0.5 * antideriv_mean_zero(source);
}

GridFunction reconstruct_u(const GridFunction& m, double u_mean) {
  const double mm = mean(m);
  if (std::abs(mm) > 1e-10)
    throw std::invalid_argument("reconstruct_u: m must be mean-zero, got mean " +
                                std::to_string(mm));
  SpectralCoeffs coeffs = to_coeffs(m);
  const int n = coeffs.n;
  coeffs.c[0] = u_mean;
  for (int k = 1; k <= n / 2; ++k) {
    const double kk = kTwoPi * k;
    coeffs.c[k] /= kk * kk;
  }
  return to_grid(coeffs, m.grid);
}

std::pair<GridFunction, GridFunction> hs2_rhs(const Hs2State& state, double kappa,
                                              double fraction) {
  if (!state.m.all_finite() || !state.rho.all_finite())
    throw std::invalid_argument("hs2_rhs: nonfinite values in state");
  if (kappa <= 0.0) throw std::invalid_argument("hs2_rhs: kappa must be > 0");
  const double mm = mean(state.m);
  if (std::abs(mm) > 1e-8)
    throw std::invalid_argument("hs2_rhs: state corrupted, |mean(m)| = " +
                                std::to_string(std::abs(mm)));

  const GridFunction u = reconstruct_u(state.m, state.u_mean);
  const GridFunction ux = deriv(u, 1);
  const GridFunction mx = deriv(state.m, 1);
  const GridFunction rhox = deriv(state.rho, 1);

  GridFunction dm = -dealiased_product(u, mx, fraction) -
                    2.0 * dealiased_product(ux, state.m, fraction) -
                    kappa * dealiased_product(state.rho, rhox, fraction);
  // Mean projection guard: the continuum dm/dt is exactly mean-zero.
  const double dm_mean = mean(dm);
  for (double& a : dm.v) a -= dm_mean;

  GridFunction drho = -deriv(dealiased_product(state.rho, u, fraction), 1);
  return {std::move(dm), std::move(drho)};
}

GridFunction muhs_rhs(const MuhsState& state, double fraction) {
  if (!state.u.all_finite())
    throw std::invalid_argument("muhs_rhs: nonfinite values in u");
  const double mu = mean(state.u);
  GridFunction nfield = -deriv(state.u, 2);
  for (double& a : nfield.v) a += mu;
  const GridFunction nx = deriv(nfield, 1);
  const GridFunction ux = deriv(state.u, 1);
  const GridFunction dn = -dealiased_product(state.u, nx, fraction) -
                          2.0 * dealiased_product(ux, nfield, fraction);
  // Invert the inertia operator mu - dx^2: k = 0 passes through, the rest
  // divide by (2 pi k)^2.
  SpectralCoeffs coeffs = to_coeffs(dn);
  const int n = coeffs.n;
  for (int k = 1; k <= n / 2; ++k) {
    const double kk = kTwoPi * k;
    coeffs.c[k] /= kk * kk;
  }
  return to_grid(coeffs, state.u.grid);
}

namespace {

// Shared integration loop. The Model adapter supplies the evolved fields,
// the wave speed entering the CFL bound and the conversion to (u, rho, m)
// for records.
template <class Model>
Trajectory run_integration(typename Model::Fields fields, const Model& model,
                           const Controls& controls) {
  controls.validate();
  Trajectory traj;
  const Grid grid = model.grid(fields);
  const double dx = grid.dx();

  double t = 0.0;
  long step = 0;

  auto record_snapshot = [&](const typename Model::Fields& f) {
    Snapshot snap = model.snapshot(t, f);
    InvariantSample inv;
    inv.t = t;
    const GridFunction ux = deriv(snap.u, 1);
    inv.mean_u = mean(snap.u);
    double e = 0.0;
    for (double a : ux.v) e += a * a;
    inv.energy = e / ux.n();
    inv.min_slope = min_value(ux);
    inv.sup_abs_u = max_abs(snap.u);
    if (snap.rho) {
      double r2 = 0.0;
      for (double a : snap.rho->v) r2 += a * a;
      r2 /= snap.rho->n();
      inv.rho_l2_squared = r2;
      inv.two_component_energy = inv.energy + controls.kappa * r2;
    }
    traj.snapshots.push_back(std::move(snap));
    traj.invariants.push_back(inv);
  };

  fields = model.dealias_fields(fields, controls.dealias_fraction);
  record_snapshot(fields);

  while (t < controls.t_end - 1e-14) {
    const double speed = model.wave_speed(fields);
    double dt = std::min(controls.dt_init, controls.cfl * dx / std::max(1.0, speed));
    dt = std::min(dt, controls.t_end - t);
    if (dt < kDtUnderflow) {
      traj.halt = HaltReason::DtUnderflow;
      break;
    }

    typename Model::Fields next = model.step(fields, dt, controls.dealias_fraction);
    if (!model.all_finite(next)) {
      traj.halt = HaltReason::NonfiniteValue;  // step rejected, last state kept
      break;
    }
    fields = std::move(next);
    t += dt;
    ++step;

    const GridFunction ux = deriv(model.u_of(fields), 1);
    SlopeSample slope;
    slope.t = t;
    slope.min_circle = min_value(ux);
    slope.min_interval = min_slope_interval(ux);
    traj.slope_series.push_back(slope);

    const bool at_stride = (step % controls.sample_stride == 0);
    const bool at_end = t >= controls.t_end - 1e-14;
    const bool tripped = slope.min_circle <= controls.blowup_slope_threshold;
    if (at_stride || at_end || tripped) record_snapshot(fields);
    if (tripped) {
      traj.halt = HaltReason::SlopeThreshold;
      break;
    }
    if (at_end) {
      traj.halt = HaltReason::TEndReached;
      break;
    }
  }

  traj.t_final = t;
  traj.steps = step;
  return traj;
}

struct MhsModel {
  using Fields = GridFunction;
  int p;

  Grid grid(const Fields& f) const { return f.grid; }
  Fields dealias_fields(const Fields& f, double fraction) const {
    return dealias(f, fraction);
  }
  double wave_speed(const Fields& f) const { return std::pow(max_abs(f), p); }
  Fields step(const Fields& f, double dt, double fraction) const {
    return rk4_step(f, dt, [&](const GridFunction& u) {
      // p was validated when the state entered integrate(); unsupported_regime
      // re-admits it without re-running the oddness gate.
      return mhs_rhs(MhsState::unsupported_regime(GridFunction(u.grid, u.v), p),
                     fraction);
    });
  }
  bool all_finite(const Fields& f) const { return f.all_finite(); }
  const GridFunction& u_of(const Fields& f) const { return f; }
  Snapshot snapshot(double t, const Fields& f) const {
    return Snapshot{t, f, std::nullopt, std::nullopt};
  }
};

struct MuhsModel {
  using Fields = GridFunction;

  Grid grid(const Fields& f) const { return f.grid; }
  Fields dealias_fields(const Fields& f, double fraction) const {
    return dealias(f, fraction);
  }
  double wave_speed(const Fields& f) const { return max_abs(f); }
  Fields step(const Fields& f, double dt, double fraction) const {
    return rk4_step(f, dt, [&](const GridFunction& u) {
      return muhs_rhs(MuhsState(GridFunction(u.grid, u.v)), fraction);
    });
  }
  bool all_finite(const Fields& f) const { return f.all_finite(); }
  const GridFunction& u_of(const Fields& f) const { return f; }
  Snapshot snapshot(double t, const Fields& f) const {
    return Snapshot{t, f, std::nullopt, std::nullopt};
  }
};

struct Hs2Fields {
  GridFunction m;
  GridFunction rho;
};
Hs2Fields operator+(Hs2Fields a, const Hs2Fields& b) {
  a.m += b.m;
  a.rho += b.rho;
  return a;
}
Hs2Fields operator*(double s, Hs2Fields a) {
  a.m = s * std::move(a.m);
  a.rho = s * std::move(a.rho);
  return a;
}

struct Hs2Model {
  using Fields = Hs2Fields;
  double kappa;
  double u_mean;

  Grid grid(const Fields& f) const { return f.m.grid; }
  Fields dealias_fields(const Fields& f, double fraction) const {
    return {dealias(f.m, fraction), dealias(f.rho, fraction)};
  }
  double wave_speed(const Fields& f) const {
    return max_abs(reconstruct_u(f.m, u_mean));
  }
  Fields step(const Fields& f, double dt, double fraction) const {
    return rk4_step(f, dt, [&](const Hs2Fields& y) {
      Hs2State s(GridFunction(y.m.grid, y.m.v), GridFunction(y.rho.grid, y.rho.v),
                 u_mean);
      auto [dm, drho] = hs2_rhs(s, kappa, fraction);
      return Hs2Fields{std::move(dm), std::move(drho)};
    });
  }
  bool all_finite(const Fields& f) const {
    return f.m.all_finite() && f.rho.all_finite();
  }
  GridFunction u_of(const Fields& f) const { return reconstruct_u(f.m, u_mean); }
  Snapshot snapshot(double t, const Fields& f) const {
    return Snapshot{t, reconstruct_u(f.m, u_mean), f.rho, f.m};
  }
};

}  // namespace

Trajectory integrate(const MhsState& initial, const Controls& controls) {
  MhsModel model{initial.p};
  return run_integration<MhsModel>(initial.u, model, controls);
}

Trajectory integrate(const Hs2State& initial, const Controls& controls) {
  Hs2Model model{controls.kappa, initial.u_mean};
  return run_integration<Hs2Model>(Hs2Fields{initial.m, initial.rho}, model,
                                   controls);
}

Trajectory integrate(const MuhsState& initial, const Controls& controls) {
  MuhsModel model{};
  return run_integration<MuhsModel>(initial.u, model, controls);
}

std::optional<double> riccati_blowup_time(double w0, double energy) {
  if (energy < 0.0)
    throw std::invalid_argument("riccati_blowup_time: energy must be >= 0");
  if (energy == 0.0) {
    if (w0 >= 0.0) return std::nullopt;
    return 2.0 / std::abs(w0);
  }
  const double root = std::sqrt(energy);
  return (2.0 / root) * (std::numbers::pi / 2.0 + std::atan(w0 / root));
}

BlowupReport detect_blowup(const Trajectory& traj, const Controls& controls) {
  (void)controls;
  BlowupReport report;
  report.min_slope_series = traj.slope_series;
  report.halted_reason = traj.halt;
  if (traj.halt == HaltReason::SlopeThreshold) {
    report.detected = true;
  } else if (traj.halt == HaltReason::DtUnderflow) {
    // Count dt underflow as breaking only when the slope tail is still falling.
    const auto& s = traj.slope_series;
    const size_t tail = std::min<size_t>(5, s.size());
    bool decreasing = tail >= 2;
    for (size_t i = s.size() - tail; i + 1 < s.size(); ++i)
      if (s[i + 1].min_circle >= s[i].min_circle) decreasing = false;
    report.detected = decreasing;
  }
  if (report.detected) report.t_detect = traj.t_final;
  return report;
}

}  // namespace hslab
