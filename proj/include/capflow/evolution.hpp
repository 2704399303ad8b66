#pragma once

#include <array>

#include "capflow/geometry.hpp"
#include "capflow/grid.hpp"
#include "capflow/singular_ops.hpp"

namespace capflow {

/// One snapshot of the moving interface.
struct InterfaceState {
  GridFn f;
  PhysParams params;
  double time = 0.0;
};

struct PsiParts {
  GridFn psi1, psi2;
};

/// The two operator sums entering the contour evolution:
///   Psi1(f) = (B0_{0,2}-B0_{2,2})[phi1+f'phi2] + B0_{1,2}[3f'phi1-phi2] + B0_{3,2}[f'phi1+phi2]
///   Psi2(f) = -B0_{0,2}[f'phi1+phi2] + (B0_{1,2}-B0_{3,2})[phi1+f'phi2] + B0_{2,2}[f'phi1-3phi2]
PsiParts psi_parts(const GridFn& f);

/// Right-hand side of df/dt = Psi(f):
///   Psi(f) = (sigma/4 pi mu) * (-f' Psi1(f) + Psi2(f)).
/// Agrees with -f' v1 + v2 from interface_velocity.
GridFn psi(const InterfaceState& state);

/// Velocity of the flow restricted to the interface, assembled from the
/// one-sided limits of the single-layer potential.
struct InterfaceVelocity {
  GridFn v1, v2;
};
InterfaceVelocity interface_velocity(const InterfaceState& state);

/// Directional (Frechet) derivative of psi at state.f in direction h,
/// assembled by the exact chain rule: every B0 through its derivative
/// formula, every phi_i through a_i(f) h', every explicit f' through h'.
GridFn dpsi(const InterfaceState& state, const GridFn& h);

/// Fourier multiplier of the linearization at the flat interface:
/// -sigma k / (4 mu), k >= 0.
double flat_symbol(const PhysParams& params, double k);

/// Local diffusion coefficient alpha_1 = (sigma/4mu)[a2(f) + f' a1(f)];
/// positive pointwise, exposed as a parabolicity diagnostic.
GridFn alpha1_diagnostic(const InterfaceState& state);

}  // namespace capflow
