#include "capflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capflow/spectral.hpp"

namespace capflow {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Rows of (d1 M + fp d2 M)(y) contracted with g = (g1, g2); the U-parts carry
// the 1/(4 pi mu) and the P-part the 1/(2 pi) of the fundamental solutions.
struct KernelRows {
  double v1, v2, q;
};

inline KernelRows slp_kernel(double y1, double y2, double fp, double g1, double g2) {
  const double r2 = y1 * y1 + y2 * y2;
  const double r4 = r2 * r2;
  const double a = y1 * y1 - y2 * y2;  // y1^2 - y2^2
  const double xy = y1 * y2;
  // 4 pi mu * dU, per stokesdiff
  const double d1U1_1 = y1 * a / r4, d1U1_2 = y2 * a / r4;
  const double d2U1_1 = y2 * (y2 * y2 + 3.0 * y1 * y1) / r4, d2U1_2 = -y1 * a / r4;
  const double d1U2_1 = y2 * a / r4, d1U2_2 = y1 * (y1 * y1 + 3.0 * y2 * y2) / r4;
  const double d2U2_1 = -y1 * a / r4, d2U2_2 = -y2 * a / r4;
  // 2 pi * dP
  const double d1P1 = a / r4, d2P1 = 2.0 * xy / r4;
  const double d1P2 = 2.0 * xy / r4, d2P2 = -a / r4;
  KernelRows k;
  k.v1 = (d1U1_1 + fp * d2U1_1) * g1 + (d1U2_1 + fp * d2U2_1) * g2;
  k.v2 = (d1U1_2 + fp * d2U1_2) * g1 + (d1U2_2 + fp * d2U2_2) * g2;
  k.q = (d1P1 + fp * d2P1) * g1 + (d1P2 + fp * d2P2) * g2;
  return k;
}

void require_line_mode(const Grid& g) {
  if (g.mode != GridMode::line)
    throw std::invalid_argument("out-of-domain: field evaluation needs a line-mode grid");
}

int node_index(const Grid& g, double xi) {
  const int j = static_cast<int>(std::lround((xi - g.xmin) / g.dx()));
  if (j < 0 || j >= g.n || std::abs(g.node(j) - xi) > 1e-9 * g.span())
    throw std::invalid_argument("out-of-domain: xi must be a grid node");
  return j;
}

}  // namespace

FundSol fundamental_solutions(int k, std::array<double, 2> y, double mu) {
  if (k != 1 && k != 2) throw std::invalid_argument("unsupported-order: k must be 1 or 2");
  const double r2 = y[0] * y[0] + y[1] * y[1];
  if (r2 == 0.0) throw std::invalid_argument("singular-point");
  const double lninv = -0.5 * std::log(r2);  // ln(1/|y|)
  const double c = -1.0 / (4.0 * M_PI * mu);
  const double yk = y[k - 1];
  FundSol out;
  out.U[0] = c * ((k == 1 ? lninv : 0.0) + y[0] * yk / r2);
  out.U[1] = c * ((k == 2 ? lninv : 0.0) + y[1] * yk / r2);
  out.P = -yk / (kTwoPi * r2);
  return out;
}

StokesletMatrix stokeslet_matrix(std::array<double, 2> y, const PhysParams& params) {
  StokesletMatrix m;
  for (int k = 1; k <= 2; ++k) {
    const FundSol fs = fundamental_solutions(k, y, params.mu);
    m.m[0][k - 1] = -params.sigma * fs.U[0];
    m.m[1][k - 1] = -params.sigma * fs.U[1];
    m.m[2][k - 1] = -params.sigma * fs.P;
  }
  return m;
}

FieldEvaluator::FieldEvaluator(const InterfaceState& state)
    : state_(state),
      fp_(GridFn::zero(state.f.grid())),
      g1_(GridFn::zero(state.f.grid())),
      g2_(GridFn::zero(state.f.grid())),
      g1p_(GridFn::zero(state.f.grid())),
      g2p_(GridFn::zero(state.f.grid())) {
  require_line_mode(state.f.grid());
  GeometryBundle geo = geometry(state_.f);
  fp_ = std::move(geo.fprime);
  g1_ = std::move(geo.g1);
  g2_ = std::move(geo.g2);
  g1p_ = derivative(g1_, 1);
  g2p_ = derivative(g2_, 1);
  const Grid& g = state_.f.grid();
  w_.resize(g.n);
  for (int j = 0; j < g.n; ++j) w_[j] = trapezoid_weight(g, j);
  for (int j = 0; j < g.n; ++j) fmax_ = std::max(fmax_, std::abs(state_.f[j]));
}

double FieldEvaluator::distance_to_interface(double x1, double x2) const {
  const Grid& g = state_.f.grid();
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n; ++j) {
    const double d1 = x1 - g.node(j);
    const double d2 = x2 - state_.f[j];
    best = std::min(best, d1 * d1 + d2 * d2);
  }
  return std::sqrt(best);
}

FieldVQ FieldEvaluator::vq_raw(double x1, double x2) const {
  const Grid& g = state_.f.grid();
  const int n = g.n;
  std::vector<double> t1(n), t2(n), tq(n);
  for (int j = 0; j < n; ++j) {
    const KernelRows k =
        slp_kernel(x1 - g.node(j), x2 - state_.f[j], fp_[j], g1_[j], g2_[j]);
    t1[j] = w_[j] * k.v1;
    t2[j] = w_[j] * k.v2;
    tq[j] = w_[j] * k.q;
  }
  const double cu = -state_.params.sigma / (4.0 * M_PI * state_.params.mu);
  const double cp = -state_.params.sigma / kTwoPi;
  FieldVQ out;
  out.v[0] = cu * pairwise_sum(t1);
  out.v[1] = cu * pairwise_sum(t2);
  out.q = cp * pairwise_sum(tq);
  return out;
}

FieldVQ FieldEvaluator::vq(const FieldPoint& x) const {
  if (x.side == Side::on)
    throw std::invalid_argument("near-interface: use one-sided extrapolation");
  const Grid& g = state_.f.grid();
  // beyond the span an admissible profile has decayed to zero
  const bool inside = x.x1 >= g.xmin && x.x1 <= g.node(g.n - 1);
  const double fx = inside ? interpolate(state_.f, x.x1) : 0.0;
  if ((x.side == Side::above) != (x.x2 > fx))
    throw std::invalid_argument("out-of-domain: side tag inconsistent with x2 - f(x1)");
  if (distance_to_interface(x.x1, x.x2) < 2.0 * dx() * (1.0 - 1e-9))
    throw std::invalid_argument("near-interface: use one-sided extrapolation");
  return vq_raw(x.x1, x.x2);
}

FieldVQ FieldEvaluator::vq_density_route(const FieldPoint& x) const {
  if (distance_to_interface(x.x1, x.x2) < 2.0 * dx() * (1.0 - 1e-9))
    throw std::invalid_argument("near-interface: use one-sided extrapolation");
  const Grid& g = state_.f.grid();
  const int n = g.n;
  const double mu = state_.params.mu;
  std::vector<double> t1(n), t2(n), tq(n);
  for (int j = 0; j < n; ++j) {
    const std::array<double, 2> r{x.x1 - g.node(j), x.x2 - state_.f[j]};
    const FundSol f1 = fundamental_solutions(1, r, mu);
    const FundSol f2 = fundamental_solutions(2, r, mu);
    t1[j] = w_[j] * (f1.U[0] * g1p_[j] + f2.U[0] * g2p_[j]);
    t2[j] = w_[j] * (f1.U[1] * g1p_[j] + f2.U[1] * g2p_[j]);
    tq[j] = w_[j] * (f1.P * g1p_[j] + f2.P * g2p_[j]);
  }
  const double c = -state_.params.sigma;
  return FieldVQ{{c * pairwise_sum(t1), c * pairwise_sum(t2)}, c * pairwise_sum(tq)};
}

FieldVQ field_vq(const InterfaceState& state, const FieldPoint& x) {
  return FieldEvaluator(state).vq(x);
}

double z_eval(const GridFn& f, const GridFn& phi, int n, const FieldPoint& x) {
  require_line_mode(f.grid());
  require_same_grid(f, phi);
  if (n < 0 || n > 3) throw std::invalid_argument("unsupported-order: Z_n needs n in 0..3");
  const Grid& g = f.grid();
  // same 2*dx validity guard as field_vq
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n; ++j) {
    const double d1 = x.x1 - g.node(j), d2 = x.x2 - f[j];
    best = std::min(best, d1 * d1 + d2 * d2);
  }
  if (std::sqrt(best) < 2.0 * g.dx() * (1.0 - 1e-9))
    throw std::invalid_argument("near-interface: use one-sided extrapolation");
  std::vector<double> terms(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double r1 = x.x1 - g.node(j), r2 = x.x2 - f[j];
    const double rr = r1 * r1 + r2 * r2;
    double num = phi[j];
    for (int i = 0; i < 3 - n; ++i) num *= r1;
    for (int i = 0; i < n; ++i) num *= r2;
    terms[j] = trapezoid_weight(g, j) * num / (rr * rr);
  }
  return pairwise_sum(terms);
}

double z_onesided_predicted(const GridFn& f, const GridFn& phi, int k, double xi, Side side) {
  require_line_mode(f.grid());
  require_same_grid(f, phi);
  if (k < 0 || k > 3) throw std::invalid_argument("unsupported-order: Z_k needs k in 0..3");
  if (side == Side::on) throw std::invalid_argument("out-of-domain: pick a side");
  const int j = node_index(f.grid(), xi);
  const GridFn bk = apply_B0(f, BSpec{k, 2}, phi);
  const GridFn fpr = derivative(f, 1);
  const double d = fpr[j];
  const double w2 = 1.0 + d * d;
  const double w4 = w2 * w2;
  double jk = 0.0;
  switch (k) {
    case 0: jk = (d * d * d + 3.0 * d) / (4.0 * w4); break;
    case 1: jk = (d * d - 1.0) / (4.0 * w4); break;
    case 2: jk = (d * d * d - d) / (4.0 * w4); break;
    case 3: jk = -(3.0 * d * d + 1.0) / (4.0 * w4); break;
  }
  const double s = (side == Side::above) ? -1.0 : 1.0;
  return bk[j] + s * kTwoPi * jk * phi[j];
}

namespace detail {
double richardson_limit(double v2d, double v4d, double v8d) {
  return (8.0 / 3.0) * v2d - 2.0 * v4d + (1.0 / 3.0) * v8d;
}

double richardson_extrapolate(const std::function<double(double)>& value_at, double d,
                              double scale) {
  const double v2 = value_at(2.0 * d), v4 = value_at(4.0 * d);
  const double v8 = value_at(8.0 * d), v16 = value_at(16.0 * d);
  const double near = richardson_limit(v2, v4, v8);
  const double far = richardson_limit(v4, v8, v16);
  if (std::abs(near - far) > 0.25 * std::abs(near) + 0.02 * std::abs(scale))
    throw std::runtime_error("extrapolation-unreliable");
  return near;
}
}  // namespace detail

PressureJump pressure_jump_check(const InterfaceState& state, double xi) {
  FieldEvaluator ev(state);
  const Grid& g = state.f.grid();
  const int j = node_index(g, xi);
  const GeometryBundle geo = geometry(state.f);
  const double n1 = geo.nu1[j], n2 = geo.nu2[j];
  const double x1 = g.node(j), x2 = state.f[j];
  const double d = g.dx();
  double kap_max = 0.0;
  for (int i = 0; i < g.n; ++i) kap_max = std::max(kap_max, std::abs(geo.kappa[i]));
  const double q_scale = state.params.sigma * kap_max;
  auto qat = [&](double sgn) {
    return [&ev, x1, x2, n1, n2, sgn](double dist) {
      return ev.vq_raw(x1 + sgn * dist * n1, x2 + sgn * dist * n2).q;
    };
  };
  const double qp = detail::richardson_extrapolate(qat(1.0), d, q_scale);
  const double qm = detail::richardson_extrapolate(qat(-1.0), d, q_scale);
  return PressureJump{qp - qm, state.params.sigma * geo.kappa[j]};
}

VelocityContinuity velocity_continuity_check(const InterfaceState& state, double xi) {
  FieldEvaluator ev(state);
  const Grid& g = state.f.grid();
  const int j = node_index(g, xi);
  const GeometryBundle geo = geometry(state.f);
  const double n1 = geo.nu1[j], n2 = geo.nu2[j];
  const double x1 = g.node(j), x2 = state.f[j];
  const double d = g.dx();
  const InterfaceVelocity von = interface_velocity(state);
  double v_scale = 0.0;
  for (int i = 0; i < state.f.size(); ++i)
    v_scale = std::max(v_scale, std::hypot(von.v1[i], von.v2[i]));
  auto vat = [&](double sgn, int comp) {
    return [&ev, x1, x2, n1, n2, sgn, comp](double dist) {
      return ev.vq_raw(x1 + sgn * dist * n1, x2 + sgn * dist * n2).v[comp];
    };
  };
  std::array<double, 2> vp{}, vm{};
  for (int c = 0; c < 2; ++c) {
    vp[c] = detail::richardson_extrapolate(vat(1.0, c), d, v_scale);
    vm[c] = detail::richardson_extrapolate(vat(-1.0, c), d, v_scale);
  }
  VelocityContinuity out;
  out.v_mismatch = std::hypot(vp[0] - vm[0], vp[1] - vm[1]);
  out.avg = {0.5 * (vp[0] + vm[0]), 0.5 * (vp[1] + vm[1])};
  out.v_gamma = {von.v1[j], von.v2[j]};
  return out;
}

FarfieldProbe farfield_probe(const InterfaceState& state, const std::vector<double>& x2_list) {
  FieldEvaluator ev(state);
  double fmax = 0.0;
  for (double v : state.f.values()) fmax = std::max(fmax, std::abs(v));
  FarfieldProbe out;
  std::vector<double> lx, lv;
  for (double x2 : x2_list) {
    if (std::abs(x2) <= 2.0 * fmax)
      throw std::invalid_argument("out-of-domain: far-field probe needs |x2| > 2*max|f|");
    const FieldVQ f = ev.vq_raw(0.0, x2);
    const double vmag = std::hypot(f.v[0], f.v[1]);
    out.samples.push_back({x2, vmag, std::abs(f.q)});
    if (vmag > 0.0) {
      lx.push_back(std::log(std::abs(x2)));
      lv.push_back(std::log(vmag));
    }
  }
  if (lx.size() >= 2) {
    // least-squares slope of log|v| against log|x2|
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += lv[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * lv[i];
    }
    out.v_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

}  // namespace capflow
