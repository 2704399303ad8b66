#pragma once

#include "capflow/grid.hpp"

namespace capflow {

/// Pointwise geometric quantities of the graph interface {(xi, f(xi))}:
/// slope, metric omega = sqrt(1+f'^2), the layer densities
/// phi1 = f'^2/(omega+omega^2), phi2 = f'/omega with g = (-phi1, phi2),
/// curvature kappa = f''/omega^3 and unit normal nu = (-f', 1)/omega.
struct GeometryBundle {
  GridFn fprime, omega, phi1, phi2, g1, g2, kappa, nu1, nu2;
};

GeometryBundle geometry(const GridFn& f);

/// Coefficients of the Frechet derivative of the densities:
/// d phi_i(f)[h] = a_i(f) * h'.
struct LinearizationCoeffs {
  GridFn a1, a2;
};

LinearizationCoeffs linearization_coeffs(const GridFn& f);

}  // namespace capflow
