#pragma once

#include <array>
#include <functional>
#include <vector>

#include "capflow/evolution.hpp"
#include "capflow/grid.hpp"

namespace capflow {

enum class Side { above, below, on };

/// A point in the plane with a side tag relative to the interface graph.
struct FieldPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  Side side = Side::above;
};

/// Stokes fundamental solution pair (U^k, P^k) at y != 0:
///   U^k_j(y) = -(1/4 pi mu)(delta_jk ln(1/|y|) + y_j y_k/|y|^2),
///   P^k(y)   = -(1/2 pi) y_k/|y|^2.
struct FundSol {
  std::array<double, 2> U;
  double P;
};
FundSol fundamental_solutions(int k, std::array<double, 2> y, double mu);

/// M(y) = -sigma * (U^1 U^2; P^1 P^2), the 3x2 single-layer kernel matrix.
struct StokesletMatrix {
  double m[3][2];
};
StokesletMatrix stokeslet_matrix(std::array<double, 2> y, const PhysParams& params);

struct FieldVQ {
  std::array<double, 2> v{0.0, 0.0};
  double q = 0.0;
};

/// Caches the interface geometry so slices of probes reuse one setup.
/// Field evaluation works on line-mode grids (the potential of a periodic
/// interface array does not decay).
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const InterfaceState& state);

  /// Velocity and pressure off the interface by trapezoid quadrature of
  /// (d1 M(r) + f'(s) d2 M(r)) g(s). Probes closer than 2*dx to the
  /// interface are refused ("near-interface").
  FieldVQ vq(const FieldPoint& x) const;

  /// Same fields through the density-derivative route
  /// (v, q) = -sigma * int (U^k, P^k)(r) g_k'(s) ds; used as the redundant
  /// consistency check between the two representations.
  FieldVQ vq_density_route(const FieldPoint& x) const;

  double distance_to_interface(double x1, double x2) const;
  double dx() const { return state_.f.grid().dx(); }
  const InterfaceState& state() const { return state_; }

  // Unguarded evaluation; the extrapolation routines own their accuracy
  // policy and probe exactly at 2*dx.
  FieldVQ vq_raw(double x1, double x2) const;

 private:
  InterfaceState state_;
  GridFn fp_, g1_, g2_, g1p_, g2p_;
  std::vector<double> w_;  // trapezoid weights
  double fmax_ = 0.0;
};

FieldVQ field_vq(const InterfaceState& state, const FieldPoint& x);

/// Z_n[phi](x) = int r1^(3-n) r2^n / |r|^4 phi(s) ds, r = x - (s, f(s)).
double z_eval(const GridFn& f, const GridFn& phi, int n, const FieldPoint& x);

/// Predicted one-sided limit of Z_k[phi] at (xi, f(xi)):
/// B0_{k,2}(f)[phi](xi) -/+ 2 pi J_k(xi) phi(xi) for the limit from
/// above/below, with jump vector
/// J = ((f'^3+3f')/4w^4, (f'^2-1)/4w^4, (f'^3-f')/4w^4, -(3f'^2+1)/4w^4).
double z_onesided_predicted(const GridFn& f, const GridFn& phi, int k, double xi, Side side);

/// [q] across the interface at xi: Richardson-extrapolated along the normal
/// from distances {2,4,8}*dx versus the exact value sigma*kappa(xi).
struct PressureJump {
  double jump_num = 0.0;
  double jump_exact = 0.0;
};
PressureJump pressure_jump_check(const InterfaceState& state, double xi);

/// |v+ - v-| from two-sided extrapolation, plus the two-sided average and
/// the on-interface velocity formula it should match.
struct VelocityContinuity {
  double v_mismatch = 0.0;
  std::array<double, 2> avg{0.0, 0.0};
  std::array<double, 2> v_gamma{0.0, 0.0};
};
VelocityContinuity velocity_continuity_check(const InterfaceState& state, double xi);

/// Field magnitudes along the vertical ray x1 = 0 with a fitted log-log
/// decay slope of |v|.
struct FarfieldSample {
  double x2 = 0.0;
  double vmag = 0.0;
  double qmag = 0.0;
};
struct FarfieldProbe {
  std::vector<FarfieldSample> samples;
  double v_slope = 0.0;
};
FarfieldProbe farfield_probe(const InterfaceState& state, const std::vector<double>& x2_list);

namespace detail {
/// Quadratic-model Richardson limit from samples at (2d, 4d, 8d):
/// (8/3) v(2d) - 2 v(4d) + (1/3) v(8d).
double richardson_limit(double v2d, double v4d, double v8d);

/// Extrapolated limit with a tail-consistency check: the limits fitted on
/// {2,4,8}d and on {4,8,16}d must agree to 25% of the limit plus 2% of
/// `scale` (a caller-supplied magnitude of the field being extrapolated).
/// Divergent tails throw "extrapolation-unreliable".
double richardson_extrapolate(const std::function<double(double)>& value_at, double d,
                              double scale);
}  // namespace detail

}  // namespace capflow
