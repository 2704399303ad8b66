#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace capflow {

enum class GridMode { line, periodic };

/// Uniform 1-D sampling lattice: nodes xi_j = xmin + j*dx, j = 0..n-1.
/// In periodic mode the coordinate is identified mod (xmax - xmin) and n must
/// be even (the alternate-point quadrature and the real FFT want it so).
struct Grid {
  double xmin = 0.0;
  double xmax = 1.0;
  int n = 8;
  GridMode mode = GridMode::line;

  Grid() = default;
  Grid(double xmin_, double xmax_, int n_, GridMode mode_)
      : xmin(xmin_), xmax(xmax_), n(n_), mode(mode_) {
    if (!(xmax > xmin)) throw std::invalid_argument("grid-too-coarse: xmax must exceed xmin");
    if (n < 8) throw std::invalid_argument("grid-too-coarse: need n >= 8 nodes");
    if (mode == GridMode::periodic && n % 2 != 0)
      throw std::invalid_argument("grid-too-coarse: periodic grids require even n");
  }

  double span() const { return xmax - xmin; }
  double dx() const { return (xmax - xmin) / n; }
  double node(int j) const { return xmin + j * dx(); }
  bool operator==(const Grid&) const = default;
};

/// Viscosity and surface tension, both strictly positive.
struct PhysParams {
  double mu = 1.0;
  double sigma = 1.0;

  PhysParams() = default;
  PhysParams(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!(mu > 0.0) || !(sigma > 0.0))
      throw std::invalid_argument("bad-config: mu and sigma must be positive");
  }
};

/// Real-valued samples on a Grid. Values are immutable once constructed;
/// every operation on grid functions is a pure function of its inputs.
class GridFn {
 public:
  GridFn(Grid grid, std::vector<double> values) : grid_(grid), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != grid_.n)
      throw std::invalid_argument("grid-mismatch: value count differs from grid.n");
    for (double x : v_)
      if (!std::isfinite(x)) throw std::invalid_argument("grid-mismatch: non-finite sample");
  }

  static GridFn zero(const Grid& g) { return GridFn(g, std::vector<double>(g.n, 0.0)); }

  template <class F>
  static GridFn sample(const Grid& g, F&& fn) {
    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = fn(g.node(j));
    return GridFn(g, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  int size() const { return grid_.n; }
  double operator[](int j) const { return v_[j]; }
  const std::vector<double>& values() const { return v_; }
  const double* data() const { return v_.data(); }

  /// Largest |value| over the outer 5% of nodes relative to the sup norm;
  /// line-mode profiles standing in for f or a phi_i should keep this below
  /// the support tolerance (1e-10). Violation is a warning, not an error.
  double support_violation() const;

 private:
  Grid grid_;
  std::vector<double> v_;
};

inline void require_same_grid(const GridFn& a, const GridFn& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("grid-mismatch");
}

// Pointwise arithmetic. These allocate; the O(N^2) kernels do not use them.
GridFn operator+(const GridFn& a, const GridFn& b);
GridFn operator-(const GridFn& a, const GridFn& b);
GridFn operator*(const GridFn& a, const GridFn& b);
GridFn operator*(double c, const GridFn& a);
GridFn operator-(const GridFn& a);

template <class F>
GridFn map(const GridFn& a, F&& fn) {
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = fn(a[j]);
  return GridFn(a.grid(), std::move(v));
}

template <class F>
GridFn zip(const GridFn& a, const GridFn& b, F&& fn) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = fn(a[j], b[j]);
  return GridFn(a.grid(), std::move(v));
}

/// Deterministic fixed-order pairwise summation; used for every trapezoid
/// and spectral reduction so identical inputs give byte-identical outputs.
double pairwise_sum(const double* x, std::size_t n);
double pairwise_sum(const std::vector<double>& x);

/// Trapezoid weight of node j (line: half weight at the ends).
double trapezoid_weight(const Grid& g, int j);

/// Trapezoid integral of a grid function.
double integrate(const GridFn& u);

constexpr double kSupportTol = 1e-10;

}  // namespace capflow
