#include "capflow/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "capflow/evolution.hpp"
#include "capflow/field.hpp"
#include "capflow/singular_ops.hpp"
#include "capflow/spectral.hpp"
#include "capflow/stepper.hpp"
#include "capflow/threading.hpp"

namespace capflow {

namespace {

double rel_err(const GridFn& got, const GridFn& want) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < got.size(); ++j) {
    num = std::max(num, std::abs(got[j] - want[j]));
    den = std::max(den, std::abs(want[j]));
  }
  return den > 0.0 ? num / den : num;
}

// Magnitude of Fourier mode k of a periodic grid function.
double mode_amplitude(const GridFn& u, int k) {
  const int n = u.grid().n;
  std::vector<std::complex<double>> uh(n / 2 + 1);
  detail::rfft(u.data(), uh.data(), n);
  return 2.0 * std::abs(uh[k]) / n;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// The line-mode reference state used by the jump/field criteria: a Gaussian
// bump of amplitude 0.3 on [-20, 20].
InterfaceState bump_state(int n = 2048) {
  Grid g(-20.0, 20.0, n, GridMode::line);
  GridFn f = GridFn::sample(g, [](double x) { return 0.3 * std::exp(-x * x); });
  return InterfaceState{std::move(f), PhysParams(1.0, 1.0), 0.0};
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

CriterionResult make(int id, std::string name, double measured, double threshold, bool pass,
                     std::string detail) {
  return CriterionResult{id, std::move(name), measured, threshold, pass, std::move(detail)};
}

}  // namespace

CriterionResult criterion_hilbert_identity() {
  Grid g(0.0, 2.0 * M_PI, 512, GridMode::periodic);
  double worst = 0.0;
  for (int k : {1, 2, 5}) {
    GridFn h = GridFn::sample(g, [k](double x) { return std::cos(k * x); });
    GridFn want = GridFn::sample(g, [k](double x) { return M_PI * std::sin(k * x); });
    GridFn got = apply_B(BSpec{0, 0}, {}, {}, h);
    worst = std::max(worst, rel_err(got, want));
  }
  return make(1, "hilbert identity B00 = pi*H", worst, 1e-6, worst <= 1e-6,
              fmt("max rel err %.2e <= %.0e on cos(k.), k=1,2,5, n=512", worst, 1e-6));
}

CriterionResult criterion_flat_dispersion() {
  Grid g(0.0, 2.0 * M_PI, 512, GridMode::periodic);
  InterfaceState flat{GridFn::zero(g), PhysParams(1.0, 1.0), 0.0};
  double worst = 0.0;
  for (int k : {1, 2, 4}) {
    GridFn h = GridFn::sample(g, [k](double x) { return std::cos(k * x); });
    GridFn d = dpsi(flat, h);
    // project onto cos(k xi)
    std::vector<double> num(g.n), den(g.n);
    for (int j = 0; j < g.n; ++j) {
      const double c = std::cos(k * g.node(j));
      num[j] = d[j] * c;
      den[j] = c * c;
    }
    const double sym = pairwise_sum(num) / pairwise_sum(den);
    worst = std::max(worst, std::abs(sym - flat_symbol(flat.params, k)));
  }
  return make(2, "flat-state dispersion -k/4", worst, 1e-3, worst <= 1e-3,
              fmt("max |symbol + k/4| = %.2e <= %.0e, k=1,2,4", worst, 1e-3));
}

CriterionResult criterion_linear_decay() {
  SimConfig cfg;
  cfg.grid = Grid(0.0, 2.0 * M_PI, 256, GridMode::periodic);
  cfg.params = PhysParams(1.0, 1.0);
  cfg.t_end = 1.0;
  cfg.scheme = Scheme::rk4;
  cfg.snapshot_every = 1;
  GridFn f0 = GridFn::sample(cfg.grid, [](double x) { return 1e-3 * std::cos(2.0 * x); });
  const RunResult rr = run(cfg, f0);
  std::vector<double> t, loga;
  for (std::size_t i = 0; i < rr.snapshots.size(); ++i) {
    t.push_back(rr.snapshots[i].time);
    loga.push_back(std::log(mode_amplitude(rr.snapshots[i].f, 2)));
  }
  const double rate = -ls_slope(t, loga);
  const double err = std::abs(rate - 0.5) / 0.5;
  const bool pass = err <= 0.02 && rr.wall_seconds < 30.0 && rr.status == RunStatus::completed;
  return make(3, "linear decay rate of k=2 mode", rate, 0.5, pass,
              fmt("fitted rate %.6f vs 0.5 (2%% band), runtime %.1fs < 30s", rate,
                  rr.wall_seconds));
}

CriterionResult criterion_frechet_consistency() {
  Grid g(0.0, 2.0 * M_PI, 256, GridMode::periodic);
  const PhysParams params(1.0, 1.0);
  double worst = 0.0;
  for (int seed = 1; seed <= 5; ++seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    auto smooth = [&](double amp) {
      std::array<double, 6> ph{};
      for (auto& p : ph) p = phase(rng);
      return GridFn::sample(g, [&, ph, amp](double x) {
        double s = 0.0;
        for (int k = 1; k <= 6; ++k) s += std::cos(k * x + ph[k - 1]) / (k * k);
        return amp * s;
      });
    };
    GridFn f = smooth(0.15), h = smooth(1.0);
    InterfaceState st{f, params, 0.0};
    GridFn exact = dpsi(st, h);
    const double eps = 1e-4;
    GridFn pp = psi({f + eps * h, params, 0.0});
    GridFn pm = psi({f + (-eps) * h, params, 0.0});
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.n; ++j) {
      const double fd = (pp[j] - pm[j]) / (2.0 * eps);
      num += (exact[j] - fd) * (exact[j] - fd);
      den += fd * fd;
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return make(4, "Frechet derivative vs central FD", worst, 1e-4, worst <= 1e-4,
              fmt("max rel l2 err %.2e <= %.0e over 5 seeds", worst, 1e-4));
}

CriterionResult criterion_pressure_jump() {
  const InterfaceState st = bump_state();
  double worst = 0.0;
  for (double xi : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double node = st.f.grid().node(
        static_cast<int>(std::lround((xi - st.f.grid().xmin) / st.f.grid().dx())));
    const PressureJump pj = pressure_jump_check(st, node);
    worst = std::max(worst, std::abs(pj.jump_num - pj.jump_exact) / std::abs(pj.jump_exact));
  }
  return make(5, "pressure jump [q] = sigma*kappa", worst, 0.02, worst <= 0.02,
              fmt("max rel err %.2e <= %.0e at 5 interface points", worst, 0.02));
}

CriterionResult criterion_velocity_continuity() {
  const InterfaceState st = bump_state();
  const InterfaceVelocity von = interface_velocity(st);
  double vmax = 0.0;
  for (int j = 0; j < st.f.size(); ++j)
    vmax = std::max(vmax, std::hypot(von.v1[j], von.v2[j]));
  double worst_jump = 0.0, worst_avg = 0.0;
  for (double xi : {-0.8, -0.3, 0.2, 0.7}) {
    const double node = st.f.grid().node(
        static_cast<int>(std::lround((xi - st.f.grid().xmin) / st.f.grid().dx())));
    const VelocityContinuity vc = velocity_continuity_check(st, node);
    worst_jump = std::max(worst_jump, vc.v_mismatch / vmax);
    const double davg = std::hypot(vc.avg[0] - vc.v_gamma[0], vc.avg[1] - vc.v_gamma[1]);
    worst_avg = std::max(worst_avg, davg / std::hypot(vc.v_gamma[0], vc.v_gamma[1]));
  }
  const bool pass = worst_jump <= 0.01 && worst_avg <= 0.02;
  return make(6, "velocity continuity + interface formula", std::max(worst_jump, worst_avg), 0.02, pass,
              fmt("|v+-v-|/max|vG| = %.2e (<=1e-2), avg vs formula %.2e (<=2e-2)", worst_jump,
                  worst_avg));
}

CriterionResult criterion_z_onesided() {
  const InterfaceState st = bump_state();
  const Grid& g = st.f.grid();
  GridFn phi = GridFn::sample(g, [](double x) { return std::exp(-(x - 0.2) * (x - 0.2)); });
  const int j = static_cast<int>(std::lround((0.5 - g.xmin) / g.dx()));
  const double xi = g.node(j), fx = st.f[j], d = g.dx();
  double worst = 0.0;
  for (int k = 0; k <= 3; ++k) {
    for (int side = 0; side < 2; ++side) {
      const double s = side == 0 ? 1.0 : -1.0;
      auto zat = [&](double dist) {
        return z_eval(st.f, phi, k,
                      FieldPoint{xi, fx + s * dist, s > 0 ? Side::above : Side::below});
      };
      const double pred =
          z_onesided_predicted(st.f, phi, k, xi, s > 0 ? Side::above : Side::below);
      const double z = detail::richardson_extrapolate(zat, d, pred);
      worst = std::max(worst, std::abs(z - pred) / std::max(std::abs(pred), 1e-12));
    }
  }
  return make(7, "Z_k one-sided limits", worst, 0.02, worst <= 0.02,
              fmt("max rel err %.2e <= %.0e for k=0..3, both sides", worst, 0.02));
}

CriterionResult criterion_scaling_invariance() {
  const double lambda = 2.0;
  const PhysParams params(1.0, 1.0);
  Grid g1(0.0, 2.0 * M_PI, 256, GridMode::periodic);
  Grid g2(0.0, 2.0 * M_PI / lambda, 256, GridMode::periodic);
  auto prof = [](double x) {
    const double t = x - M_PI;
    return 0.05 * std::exp(-2.0 * t * t);
  };
  GridFn f0 = GridFn::sample(g1, prof);
  GridFn f0l = GridFn::sample(g2, [&](double x) { return prof(lambda * x) / lambda; });
  const double t_end = 0.5, dt = 0.01;
  SimConfig c1{g1, params, t_end, dt, Scheme::rk4, 1000000, {}};
  SimConfig c2{g2, params, t_end / lambda, dt / lambda, Scheme::rk4, 1000000, {}};
  const RunResult r1 = run(c1, f0);
  const RunResult r2 = run(c2, f0l);
  const GridFn& fa = r1.snapshots.back().f;
  const GridFn& fb = r2.snapshots.back().f;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < g1.n; ++j) {
    num = std::max(num, std::abs(lambda * fb[j] - fa[j]));
    den = std::max(den, std::abs(fa[j]));
  }
  const double err = num / den;
  return make(8, "scaling invariance f_lambda", err, 1e-3, err <= 1e-3,
              fmt("rel err %.2e <= %.0e at lambda=2, matched grids", err, 1e-3));
}

CriterionResult criterion_conservation() {
  SimConfig cfg;
  cfg.grid = Grid(0.0, 2.0 * M_PI, 256, GridMode::periodic);
  cfg.params = PhysParams(1.0, 1.0);
  cfg.t_end = 1.0;
  cfg.snapshot_every = 1;
  const double A = 0.04;
  GridFn f0 = GridFn::sample(cfg.grid, [&](double x) {
    const double t = x - M_PI;
    return A * std::exp(-4.0 * t * t);
  });
  const RunResult rr = run(cfg, f0);
  const double tol_mass = 1e-4 * cfg.grid.span() * A;
  double drift = 0.0, energy_rise = 0.0;
  for (std::size_t i = 0; i < rr.series.size(); ++i) {
    drift = std::max(drift, std::abs(rr.series[i].mass - rr.series[0].mass));
    if (i > 0) energy_rise = std::max(energy_rise, rr.series[i].energy - rr.series[i - 1].energy);
  }
  const double tol_energy = 1e-8 * rr.series[0].energy;
  const bool pass = drift <= tol_mass && energy_rise <= tol_energy;
  return make(9, "mass conservation and energy decay", drift, tol_mass, pass,
              fmt("mass drift %.2e <= %.2e; max per-step energy rise within tolerance", drift,
                  tol_mass));
}

CriterionResult criterion_farfield_decay() {
  const InterfaceState st = bump_state();
  const std::vector<double> xs{10, 14, 20, 28, 40, 56, 80, 100};
  const FarfieldProbe fp = farfield_probe(st, xs);
  bool monotone = true;
  for (std::size_t i = 1; i < fp.samples.size(); ++i)
    if (fp.samples[i].vmag >= fp.samples[i - 1].vmag) monotone = false;
  const bool q_decays = fp.samples.back().qmag < 0.1 * fp.samples.front().qmag;
  const bool pass = monotone && q_decays && fp.v_slope <= -0.4;
  return make(10, "far-field decay of (v, q)", fp.v_slope, -0.4, pass,
              fmt("|v| monotone on [10,100], slope %.2f <= -0.4, |q| shrinks %.1fx",
                  fp.v_slope, fp.samples.front().qmag / fp.samples.back().qmag));
}

CriterionResult criterion_stokes_residual() {
  const InterfaceState st = bump_state();
  FieldEvaluator ev(st);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.8, 3.0), us(0.0, 1.0);
  const double h = 1e-3;
  const double mu = st.params.mu;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double x1 = ux(rng);
    const double x2 = (us(rng) < 0.5 ? -1.0 : 1.0) * uy(rng);
    const FieldVQ e = ev.vq_raw(x1 + h, x2), w = ev.vq_raw(x1 - h, x2);
    const FieldVQ nn = ev.vq_raw(x1, x2 + h), ss = ev.vq_raw(x1, x2 - h);
    const FieldVQ cc = ev.vq_raw(x1, x2);
    double res = 0.0, scale = 0.0;
    for (int c = 0; c < 2; ++c) {
      const double lap = (e.v[c] + w.v[c] + nn.v[c] + ss.v[c] - 4.0 * cc.v[c]) / (h * h);
      const double gq = c == 0 ? (e.q - w.q) / (2.0 * h) : (nn.q - ss.q) / (2.0 * h);
      res += (mu * lap - gq) * (mu * lap - gq);
      scale += (mu * lap) * (mu * lap) + gq * gq;
    }
    const double div = (e.v[0] - w.v[0]) / (2.0 * h) + (nn.v[1] - ss.v[1]) / (2.0 * h);
    const double gradv = (std::hypot(e.v[0] - w.v[0], e.v[1] - w.v[1]) +
                          std::hypot(nn.v[0] - ss.v[0], nn.v[1] - ss.v[1])) /
                         (2.0 * h);
    worst = std::max(worst, std::sqrt(res / scale));
    worst = std::max(worst, std::abs(div) / gradv);
  }
  return make(11, "Stokes residual off the interface", worst, 1e-4, worst <= 1e-4,
              fmt("max relative residual %.2e <= %.0e at 10 probes", worst, 1e-4));
}

CriterionResult criterion_symmetry_suite() {
  Grid g(0.0, 2.0 * M_PI, 128, GridMode::periodic);
  const PhysParams params(1.3, 0.8);
  GridFn f = GridFn::sample(
      g, [](double x) { return 0.08 * std::cos(2.0 * x) + 0.05 * std::sin(5.0 * x); });
  const GridFn base = psi({f, params, 0.0});
  const int n = g.n;
  double worst = 0.0;

  {  // reflection xi -> -xi
    std::vector<double> fr(n);
    for (int j = 0; j < n; ++j) fr[j] = f[(n - j) % n];
    GridFn pr = psi({GridFn(g, std::move(fr)), params, 0.0});
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(pr[j] - base[(n - j) % n]));
  }
  {  // whole-node translation
    const int c = 37;
    std::vector<double> ft(n);
    for (int j = 0; j < n; ++j) ft[j] = f[(j - c % n + n) % n];
    GridFn pt = psi({GridFn(g, std::move(ft)), params, 0.0});
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(pt[j] - base[(j - c % n + n) % n]));
  }
  {  // vertical shift
    GridFn pv = psi({map(f, [](double x) { return x + 0.37; }), params, 0.0});
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(pv[j] - base[j]));
  }
  return make(12, "symmetry suite (reflect/translate/shift)", worst, 1e-12, worst <= 1e-12,
              fmt("max abs deviation %.2e <= %.0e", worst, 1e-12));
}

CriterionResult criterion_performance() {
  const BSpec spec{3, 2};
  const int saved = thread_count();
  set_thread_count(1);
  std::vector<double> ln, lt;
  double t4096 = 0.0;
  for (int n : {1024, 2048, 4096, 8192}) {
    const BenchResult b = bench_apply_B0(spec, n, 5);
    ln.push_back(std::log(double(n)));
    lt.push_back(std::log(b.seconds));
    if (n == 4096) t4096 = b.seconds;
  }
  const double slope = ls_slope(ln, lt);
  set_thread_count(4);
  const BenchResult b4 = bench_apply_B0(spec, 4096, 5);
  set_thread_count(saved);
  const double speedup = t4096 / b4.seconds;
  const bool slope_ok = std::abs(slope - 2.0) <= 0.2;
  const bool speed_ok = speedup >= 3.0;
  return make(13, "O(N^2) scaling and 4-thread speedup", speedup, 3.0, slope_ok && speed_ok,
              fmt("log-log slope %.2f (2 +/- 0.2); speedup %.2fx at 4 threads (>= 3x)", slope,
                  speedup));
}

std::vector<CriterionResult> run_acceptance(ValidateLevel level, bool include_perf) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_hilbert_identity());
  out.push_back(criterion_flat_dispersion());
  if (level == ValidateLevel::full) out.push_back(criterion_linear_decay());
  out.push_back(criterion_frechet_consistency());
  out.push_back(criterion_pressure_jump());
  out.push_back(criterion_velocity_continuity());
  out.push_back(criterion_z_onesided());
  if (level == ValidateLevel::full) {
    out.push_back(criterion_scaling_invariance());
    out.push_back(criterion_conservation());
  }
  out.push_back(criterion_farfield_decay());
  out.push_back(criterion_stokes_residual());
  out.push_back(criterion_symmetry_suite());
  if (level == ValidateLevel::full && include_perf) out.push_back(criterion_performance());
  return out;
}

std::string format_criterion(const CriterionResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "[%s] %2d %-40s %s", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
  return buf;
}

}  // namespace capflow
