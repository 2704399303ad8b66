#pragma once

#include <complex>
#include <vector>

#include "capflow/grid.hpp"

namespace capflow {

/// d^order u / dxi^order. Periodic grids differentiate spectrally; line grids
/// use 4th-order centered differences with one-sided closures at the ends
/// (mirror-symmetric, so reflection commutes with differentiation exactly).
GridFn derivative(const GridFn& u, int order);

/// Hilbert transform, Fourier multiplier -i*sign(k); the mean maps to zero.
/// Periodic mode only.
GridFn hilbert(const GridFn& u);

/// (-d^2/dxi^2)^{1/2}, Fourier multiplier |k|. Periodic mode only.
/// Equals hilbert(derivative(u, 1)) on resolved data.
GridFn half_laplacian(const GridFn& u);

/// Cubic (4-point Lagrange) interpolation. Periodic: any real x; line: x must
/// lie within the node range, otherwise "out-of-domain".
double interpolate(const GridFn& u, double x);

struct Norms {
  double l2 = 0.0;    // sqrt(trapezoid integral of u^2)
  double linf = 0.0;  // max |u|
};
Norms norms(const GridFn& u);

/// Spectral Sobolev-norm proxy: sum over modes of (1 + k^2)^s |u_hat|^2,
/// normalized so hs_proxy(u, 0) equals l2^2 (Parseval). On the line the signal
/// is tapered over the outer 5% and zero-padded to twice the span; for
/// admissible compactly supported profiles the taper is a no-op. A monitoring
/// device, not a faithful fractional Sobolev norm.
double hs_proxy(const GridFn& u, double s);

namespace detail {
// Forward real FFT (size n -> n/2+1 bins) and normalized inverse. Plans are
// cached per size behind a mutex; execution is concurrency-safe.
void rfft(const double* in, std::complex<double>* out, int n);
void irfft(const std::complex<double>* in, double* out, int n);

// Fornberg finite-difference weights for the m-th derivative at x0 from the
// given nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);
}  // namespace detail

}  // namespace capflow
