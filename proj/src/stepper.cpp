#include "capflow/stepper.hpp"

#include <chrono>
#include <cmath>

#include "capflow/spectral.hpp"

namespace capflow {

namespace {

GridFn axpy(const GridFn& x, double a, const GridFn& y) {  // x + a*y
  std::vector<double> v(x.size());
  for (int j = 0; j < x.size(); ++j) v[j] = x[j] + a * y[j];
  return GridFn(x.grid(), std::move(v));
}

}  // namespace

Diagnostics diagnostics(const InterfaceState& state, double dt_used, double hs_s) {
  Diagnostics d;
  d.time = state.time;
  d.dt_used = dt_used;
  d.mass = integrate(state.f);
  const GeometryBundle geo = geometry(state.f);
  const int n = state.f.size();
  std::vector<double> eterms(n);
  for (int j = 0; j < n; ++j)
    eterms[j] = trapezoid_weight(state.f.grid(), j) * (geo.omega[j] - 1.0);
  d.energy = pairwise_sum(eterms);
  for (double x : state.f.values()) d.max_abs_f = std::max(d.max_abs_f, std::abs(x));
  d.hs_proxy = hs_proxy(state.f, hs_s);
  const GridFn a1 = alpha1_diagnostic(state);
  d.alpha_min = a1[0];
  for (double x : a1.values()) d.alpha_min = std::min(d.alpha_min, x);
  return d;
}

double auto_dt(const Grid& grid, const PhysParams& params) {
  return 0.5 * grid.dx() * 4.0 * params.mu / params.sigma;
}

InterfaceState step_rk4(const InterfaceState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("bad-config: dt must be positive");
  const GridFn k1 = psi(state);
  const GridFn k2 = psi({axpy(state.f, 0.5 * dt, k1), state.params, state.time + 0.5 * dt});
  const GridFn k3 = psi({axpy(state.f, 0.5 * dt, k2), state.params, state.time + 0.5 * dt});
  const GridFn k4 = psi({axpy(state.f, dt, k3), state.params, state.time + dt});
  std::vector<double> v(state.f.size());
  for (int j = 0; j < state.f.size(); ++j)
    v[j] = state.f[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  for (double x : v)
    if (!std::isfinite(x)) throw std::runtime_error("step-diverged");
  return InterfaceState{GridFn(state.f.grid(), std::move(v)), state.params, state.time + dt};
}

double imex_linear_factor(double z) { return (1.0 - 0.5 * z) / (1.0 + 0.5 * z); }

void ImexStepper::prime(const InterfaceState& state, double dt) {
  prev_ = remainder(state);
  prev_dt_ = dt;
}

GridFn ImexStepper::remainder(const InterfaceState& state) const {
  if (remainder_) return remainder_(state);
  // Psi(f) minus the flat-state linear part applied spectrally
  GridFn lin = half_laplacian(state.f);
  const double c = -state.params.sigma / (4.0 * state.params.mu);
  GridFn full = psi(state);
  std::vector<double> v(state.f.size());
  for (int j = 0; j < state.f.size(); ++j) v[j] = full[j] - c * lin[j];
  return GridFn(state.f.grid(), std::move(v));
}

InterfaceState ImexStepper::step(const InterfaceState& state, double dt) {
  const Grid& g = state.f.grid();
  if (g.mode != GridMode::periodic) throw std::invalid_argument("periodic-only");
  if (!(dt > 0.0)) throw std::invalid_argument("bad-config: dt must be positive");

  GridFn n_now = remainder(state);
  // (3/2, -1/2) extrapolation; first step falls back to forward values
  std::vector<double> n_ext(g.n);
  if (prev_ && prev_dt_ == dt) {
    for (int j = 0; j < g.n; ++j) n_ext[j] = 1.5 * n_now[j] - 0.5 * (*prev_)[j];
  } else {
    for (int j = 0; j < g.n; ++j) n_ext[j] = n_now[j];
  }

  const int n = g.n;
  std::vector<std::complex<double>> fh(n / 2 + 1), nh(n / 2 + 1);
  detail::rfft(state.f.data(), fh.data(), n);
  detail::rfft(n_ext.data(), nh.data(), n);
  const double k0 = 2.0 * M_PI / g.span();
  const double lam = state.params.sigma / (4.0 * state.params.mu);
  for (int m = 0; m <= n / 2; ++m) {
    const double z = lam * (k0 * m) * dt;  // -dt*L with L = -(sigma/4mu)|k|
    fh[m] = (fh[m] * (1.0 - 0.5 * z) + dt * nh[m]) / (1.0 + 0.5 * z);
  }
  std::vector<double> v(n);
  detail::irfft(fh.data(), v.data(), n);
  for (double x : v)
    if (!std::isfinite(x)) throw std::runtime_error("step-diverged");
  prev_ = std::move(n_now);
  prev_dt_ = dt;
  return InterfaceState{GridFn(g, std::move(v)), state.params, state.time + dt};
}

RunResult run(const SimConfig& config, const GridFn& f0) {
  if (!(config.t_end > 0.0)) throw std::invalid_argument("bad-config: t_end must be positive");
  if (config.dt && !(*config.dt > 0.0)) throw std::invalid_argument("bad-config: dt must be positive");
  if (config.scheme == Scheme::imex && config.grid.mode != GridMode::periodic)
    throw std::invalid_argument("bad-config: imex requires periodic mode");
  if (!(f0.grid() == config.grid)) throw std::invalid_argument("bad-config: f0 grid differs");
  if (config.snapshot_every < 1) throw std::invalid_argument("bad-config: snapshot_every >= 1");

  const auto t_start = std::chrono::steady_clock::now();
  const double dt_base = config.dt ? *config.dt : auto_dt(config.grid, config.params);
  const long nsteps = std::max(1L, static_cast<long>(std::ceil(config.t_end / dt_base - 1e-12)));
  const double dt = config.t_end / static_cast<double>(nsteps);

  RunResult out;
  InterfaceState state{f0, config.params, 0.0};
  ImexStepper imex;
  const double hs0 = hs_proxy(f0, config.monitor.hs_s);
  out.snapshots.push_back(state);
  out.series.push_back(diagnostics(state, dt, config.monitor.hs_s));

  for (long step = 1; step <= nsteps; ++step) {
    try {
      if (config.scheme == Scheme::rk4) {
        state = step_rk4(state, dt);
      } else if (step == 1) {
        // bootstrap the two-step extrapolation with one rk4 step
        imex.prime(state, dt);
        state = step_rk4(state, dt);
      } else {
        state = imex.step(state, dt);
      }
    } catch (const std::runtime_error&) {
      out.status = RunStatus::blow_up_suspected;
      break;
    }
    out.steps = step;
    const bool snap = (step % config.snapshot_every == 0) || step == nsteps;
    Diagnostics d = diagnostics(state, dt, config.monitor.hs_s);
    if (snap) {
      out.snapshots.push_back(state);
      out.series.push_back(d);
    }
    if (!std::isfinite(d.hs_proxy) ||
        (hs0 > 0.0 && d.hs_proxy > config.monitor.blowup_factor * hs0)) {
      if (!snap) {  // keep the state that tripped the monitor
        out.snapshots.push_back(state);
        out.series.push_back(d);
      }
      out.status = RunStatus::blow_up_suspected;
      break;
    }
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return out;
}

}  // namespace capflow
