#include "capflow/geometry.hpp"

#include <cmath>

#include "capflow/spectral.hpp"

namespace capflow {

GeometryBundle geometry(const GridFn& f) {
  GridFn fp = derivative(f, 1);
  GridFn fpp = derivative(f, 2);
  const int n = f.size();
  std::vector<double> om(n), p1(n), p2(n), kap(n), n1(n), n2(n);
  for (int j = 0; j < n; ++j) {
    const double d = fp[j];
    const double w = std::sqrt(1.0 + d * d);
    om[j] = w;
    p1[j] = d * d / (w + w * w);
    p2[j] = d / w;
    kap[j] = fpp[j] / (w * w * w);
    n1[j] = -d / w;
    n2[j] = 1.0 / w;
  }
  const Grid& g = f.grid();
  GridFn phi1(g, std::move(p1));
  GridFn phi2(g, std::move(p2));
  GridFn g1 = -phi1;
  GridFn g2 = phi2;
  return GeometryBundle{std::move(fp),  GridFn(g, std::move(om)), std::move(phi1),
                        std::move(phi2), std::move(g1),           std::move(g2),
                        GridFn(g, std::move(kap)), GridFn(g, std::move(n1)),
                        GridFn(g, std::move(n2))};
}

LinearizationCoeffs linearization_coeffs(const GridFn& f) {
  GridFn fp = derivative(f, 1);
  const int n = f.size();
  std::vector<double> a1(n), a2(n);
  for (int j = 0; j < n; ++j) {
    const double d = fp[j];
    const double w = std::sqrt(1.0 + d * d);
    const double den = w + 1.0 + d * d;
    a1[j] = d * (2.0 + d * d + 2.0 * w) / (w * den * den);
    a2[j] = 1.0 / (w * w * w);
  }
  return LinearizationCoeffs{GridFn(f.grid(), std::move(a1)), GridFn(f.grid(), std::move(a2))};
}

}  // namespace capflow
