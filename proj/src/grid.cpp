#include "capflow/grid.hpp"

#include <algorithm>
#include <cmath>

namespace capflow {

double GridFn::support_violation() const {
  if (grid_.mode != GridMode::line) return 0.0;
  const int n = grid_.n;
  const int edge = std::max(1, n / 20);
  double sup = 0.0;
  for (double x : v_) sup = std::max(sup, std::abs(x));
  if (sup == 0.0) return 0.0;
  double outer = 0.0;
  for (int j = 0; j < edge; ++j) {
    outer = std::max(outer, std::abs(v_[j]));
    outer = std::max(outer, std::abs(v_[n - 1 - j]));
  }
  return outer / sup;
}

GridFn operator+(const GridFn& a, const GridFn& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}
GridFn operator-(const GridFn& a, const GridFn& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}
GridFn operator*(const GridFn& a, const GridFn& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}
GridFn operator*(double c, const GridFn& a) {
  return map(a, [c](double x) { return c * x; });
}
GridFn operator-(const GridFn& a) {
  return map(a, [](double x) { return -x; });
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = x[0];
    for (std::size_t i = 1; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

double trapezoid_weight(const Grid& g, int j) {
  const double dx = g.dx();
  if (g.mode == GridMode::periodic) return dx;
  return (j == 0 || j == g.n - 1) ? 0.5 * dx : dx;
}

double integrate(const GridFn& u) {
  const Grid& g = u.grid();
  std::vector<double> terms(g.n);
  for (int j = 0; j < g.n; ++j) terms[j] = trapezoid_weight(g, j) * u[j];
  return pairwise_sum(terms);
}

}  // namespace capflow
