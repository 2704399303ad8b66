#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capflow/evolution.hpp"
#include "capflow/grid.hpp"

namespace capflow {

enum class Scheme { rk4, imex };

struct MonitorSettings {
  double hs_s = 1.75;           // Sobolev index of the blow-up monitor
  double blowup_factor = 1e3;   // abort when hs_proxy exceeds this times its initial value
};

struct SimConfig {
  Grid grid{0.0, 2.0 * M_PI, 256, GridMode::periodic};
  PhysParams params;
  double t_end = 1.0;
  std::optional<double> dt;  // empty = auto CFL step
  Scheme scheme = Scheme::rk4;
  int snapshot_every = 10;
  MonitorSettings monitor;
};

struct Diagnostics {
  double time = 0.0;
  double mass = 0.0;       // trapezoid integral of f
  double energy = 0.0;     // trapezoid integral of (omega - 1), >= 0
  double max_abs_f = 0.0;
  double hs_proxy = 0.0;
  double dt_used = 0.0;
  double alpha_min = 0.0;  // min of the parabolicity diagnostic
};

Diagnostics diagnostics(const InterfaceState& state, double dt_used, double hs_s = 1.75);

/// Flat-state CFL step for the explicit scheme: c_cfl * dx * 4 mu / sigma
/// with c_cfl = 0.5 (spectral radius of the first-order symbol at the
/// Nyquist mode, with margin). The imex scheme reuses it when dt is auto.
double auto_dt(const Grid& grid, const PhysParams& params);

/// Classical 4-stage explicit step of df/dt = Psi(f).
InterfaceState step_rk4(const InterfaceState& state, double dt);

/// Crank-Nicolson amplification factor of one imex step on a pure linear
/// mode, (1 - z/2)/(1 + z/2) with z = sigma k dt/(4 mu).
double imex_linear_factor(double z);

/// Crank-Nicolson on the Fourier-diagonal linear part -(sigma/4mu)|k| with
/// (3/2, -1/2) extrapolation of the nonlinear remainder; the first step is
/// bootstrapped by rk4. Periodic grids only. The remainder evaluation can be
/// overridden (tests inject zero to probe the pure CN factor).
class ImexStepper {
 public:
  using RemainderFn = std::function<GridFn(const InterfaceState&)>;

  ImexStepper() = default;
  explicit ImexStepper(RemainderFn remainder) : remainder_(std::move(remainder)) {}

  /// Record the remainder at the pre-step state so the following step can
  /// extrapolate (used when the first step is taken by rk4).
  void prime(const InterfaceState& state, double dt);

  InterfaceState step(const InterfaceState& state, double dt);
  void reset() { prev_.reset(); }

 private:
  GridFn remainder(const InterfaceState& state) const;
  RemainderFn remainder_;
  std::optional<GridFn> prev_;
  double prev_dt_ = 0.0;
};

enum class RunStatus { completed, blow_up_suspected };

struct RunResult {
  std::vector<InterfaceState> snapshots;
  std::vector<Diagnostics> series;
  RunStatus status = RunStatus::completed;
  long steps = 0;
  double wall_seconds = 0.0;
};

/// Integrates to t_end, or aborts with blow_up_suspected when the monitor
/// trips or a step produces non-finite values. Snapshots (including the
/// initial and final states) are taken every snapshot_every steps.
RunResult run(const SimConfig& config, const GridFn& f0);

}  // namespace capflow
