#include "capflow/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace capflow {
namespace detail {

namespace {

std::mutex plan_mutex;

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Plans are created once per size with FFTW_UNALIGNED so they can execute on
// arbitrary caller buffers via the new-array interface.
PlanPair& plans_for(int n) {
  static std::map<int, PlanPair>* cache = new std::map<int, PlanPair>();
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache->find(n);
  if (it != cache->end()) return it->second;
  std::vector<double> re(n);
  std::vector<std::complex<double>> cx(n / 2 + 1);
  PlanPair p;
  p.fwd = fftw_plan_dft_r2c_1d(n, re.data(), reinterpret_cast<fftw_complex*>(cx.data()),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cx.data()), re.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache->emplace(n, p).first->second;
}

}  // namespace

void rfft(const double* in, std::complex<double>* out, int n) {
  PlanPair& p = plans_for(n);
  std::vector<double> tmp(in, in + n);  // r2c transforms clobber their input
  fftw_execute_dft_r2c(p.fwd, tmp.data(), reinterpret_cast<fftw_complex*>(out));
}

void irfft(const std::complex<double>* in, double* out, int n) {
  PlanPair& p = plans_for(n);
  std::vector<std::complex<double>> tmp(in, in + n / 2 + 1);
  fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(tmp.data()), out);
  const double scale = 1.0 / n;
  for (int j = 0; j < n; ++j) out[j] *= scale;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
  // Fornberg (1988), Math. Comp. 51: generation of finite difference formulas.
  const int nn = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(nn, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < nn; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(nn);
  for (int i = 0; i < nn; ++i) w[i] = c[i][m];
  return w;
}

namespace {

// Periodic spectral derivative: multiply mode k by (i*k_phys)^order; the
// Nyquist bin is zeroed for odd orders (its sign is ambiguous for real data).
GridFn spectral_derivative(const GridFn& u, int order) {
  const Grid& g = u.grid();
  const int n = g.n;
  std::vector<std::complex<double>> uh(n / 2 + 1);
  rfft(u.data(), uh.data(), n);
  const double k0 = 2.0 * M_PI / g.span();
  for (int m = 0; m <= n / 2; ++m) {
    const std::complex<double> ik(0.0, k0 * m);
    std::complex<double> mult = (order == 1) ? ik : ik * ik;
    if (m == n / 2 && order % 2 == 1) mult = 0.0;
    uh[m] *= mult;
  }
  std::vector<double> out(n);
  irfft(uh.data(), out.data(), n);
  return GridFn(g, std::move(out));
}

// Line derivative: 8th-order centered interior stencil in paired +/- form
// (so d/dxi commutes with xi -> -xi bit-exactly on node-symmetric grids),
// with mirrored one-sided closures at the two ends.
GridFn line_derivative(const GridFn& u, int order) {
  const Grid& g = u.grid();
  const int n = g.n;
  const double dx = g.dx();
  const int wb = (order == 1) ? 9 : 10;  // one-sided width for 8th order
  if (n < wb) throw std::invalid_argument("grid-too-coarse: derivative stencil");

  auto stencil = [&](double x0, int count) {
    std::vector<double> nodes(count);
    for (int i = 0; i < count; ++i) nodes[i] = i * dx;
    return detail::fd_weights(x0, nodes, order);
  };
  std::vector<std::vector<double>> wleft(4);
  for (int j = 0; j < 4; ++j) wleft[j] = stencil(j * dx, wb);

  std::vector<double> out(n);
  if (order == 1) {
    const double c1 = 672.0 / (840.0 * dx), c2 = 168.0 / (840.0 * dx),
                 c3 = 32.0 / (840.0 * dx), c4 = 3.0 / (840.0 * dx);
    for (int j = 4; j < n - 4; ++j)
      out[j] = c1 * (u[j + 1] - u[j - 1]) - c2 * (u[j + 2] - u[j - 2]) +
               c3 * (u[j + 3] - u[j - 3]) - c4 * (u[j + 4] - u[j - 4]);
  } else {
    const double c0 = 205.0 / 72.0 / (dx * dx), c1 = 8.0 / 5.0 / (dx * dx),
                 c2 = 1.0 / 5.0 / (dx * dx), c3 = 8.0 / 315.0 / (dx * dx),
                 c4 = 1.0 / 560.0 / (dx * dx);
    for (int j = 4; j < n - 4; ++j)
      out[j] = c1 * (u[j + 1] + u[j - 1]) - c2 * (u[j + 2] + u[j - 2]) +
               c3 * (u[j + 3] + u[j - 3]) - c4 * (u[j + 4] + u[j - 4]) - c0 * u[j];
  }
  for (int j = 0; j < 4; ++j) {
    double sl = 0.0, sr = 0.0;
    for (int i = 0; i < wb; ++i) {
      sl += wleft[j][i] * u[i];
      sr += wleft[j][i] * u[n - 1 - i];  // mirrored closure
    }
    out[j] = sl;
    out[n - 1 - j] = (order % 2 == 1) ? -sr : sr;
  }
  return GridFn(g, std::move(out));
}

GridFn apply_multiplier(const GridFn& u,
                        const std::function<std::complex<double>(int, double)>& mult) {
  const Grid& g = u.grid();
  if (g.mode != GridMode::periodic) throw std::invalid_argument("periodic-only");
  const int n = g.n;
  std::vector<std::complex<double>> uh(n / 2 + 1);
  rfft(u.data(), uh.data(), n);
  const double k0 = 2.0 * M_PI / g.span();
  for (int m = 0; m <= n / 2; ++m) uh[m] *= mult(m, k0 * m);
  std::vector<double> out(n);
  irfft(uh.data(), out.data(), n);
  return GridFn(g, std::move(out));
}

}  // namespace
}  // namespace detail

GridFn derivative(const GridFn& u, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("unsupported-order: derivative order must be 1 or 2");
  if (u.grid().mode == GridMode::periodic) return detail::spectral_derivative(u, order);
  return detail::line_derivative(u, order);
}

GridFn hilbert(const GridFn& u) {
  return detail::apply_multiplier(u, [&](int m, double) -> std::complex<double> {
    if (m == 0 || m == u.grid().n / 2) return 0.0;
    return std::complex<double>(0.0, -1.0);  // -i*sign(k), k > 0 bins only
  });
}

GridFn half_laplacian(const GridFn& u) {
  return detail::apply_multiplier(u, [&](int m, double kphys) -> std::complex<double> {
    if (m == u.grid().n / 2) return 0.0;  // consistent with hilbert(derivative(u,1))
    return std::abs(kphys);
  });
}

double interpolate(const GridFn& u, double x) {
  const Grid& g = u.grid();
  const int n = g.n;
  const double dx = g.dx();
  if (g.mode == GridMode::periodic) {
    double t = std::fmod(x - g.xmin, g.span());
    if (t < 0) t += g.span();
    const int j0 = static_cast<int>(std::floor(t / dx));
    const double th = t / dx - j0;
    if (th == 0.0) return u[j0 % n];
    double val = 0.0;
    for (int i = -1; i <= 2; ++i) {
      double lag = 1.0;
      for (int k = -1; k <= 2; ++k)
        if (k != i) lag *= (th - k) / (i - k);
      val += lag * u[((j0 + i) % n + n) % n];
    }
    return val;
  }
  const double xlast = g.node(n - 1);
  const double slack = 1e-12 * g.span();
  if (x < g.xmin - slack || x > xlast + slack) throw std::invalid_argument("out-of-domain");
  double t = std::clamp((x - g.xmin) / dx, 0.0, double(n - 1));
  int j0 = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
  if (t == j0) return u[j0];
  int first = std::clamp(j0 - 1, 0, n - 4);
  double val = 0.0;
  for (int i = 0; i < 4; ++i) {
    double lag = 1.0;
    for (int k = 0; k < 4; ++k)
      if (k != i) lag *= (t - (first + k)) / (i - k);
    val += lag * u[first + i];
  }
  return val;
}

Norms norms(const GridFn& u) {
  Norms out;
  std::vector<double> sq(u.size());
  for (int j = 0; j < u.size(); ++j) {
    sq[j] = trapezoid_weight(u.grid(), j) * u[j] * u[j];
    out.linf = std::max(out.linf, std::abs(u[j]));
  }
  out.l2 = std::sqrt(pairwise_sum(sq));
  return out;
}

double hs_proxy(const GridFn& u, double s) {
  const Grid& g = u.grid();
  std::vector<double> sig;
  double period;
  if (g.mode == GridMode::periodic) {
    sig.assign(u.values().begin(), u.values().end());
    period = g.span();
  } else {
    // taper the outer 5% with a cosine ramp, then zero-pad to twice the span
    const int n = g.n;
    const int edge = std::max(1, n / 20);
    sig.assign(2 * n, 0.0);
    for (int j = 0; j < n; ++j) {
      double w = 1.0;
      if (j < edge) w = 0.5 - 0.5 * std::cos(M_PI * (j + 0.5) / edge);
      if (j >= n - edge) w = 0.5 - 0.5 * std::cos(M_PI * (n - 0.5 - j) / edge);
      sig[j] = w * u[j];
    }
    period = 2.0 * g.span();
  }
  const int n = static_cast<int>(sig.size());
  std::vector<std::complex<double>> uh(n / 2 + 1);
  detail::rfft(sig.data(), uh.data(), n);
  const double k0 = 2.0 * M_PI / period;
  const double norm = period / double(n) / double(n);  // sum |u_hat|^2 = trapezoid integral u^2
  std::vector<double> terms(n / 2 + 1);
  for (int m = 0; m <= n / 2; ++m) {
    const double k = k0 * m;
    const double count = (m == 0 || m == n / 2) ? 1.0 : 2.0;
    terms[m] = count * norm * std::pow(1.0 + k * k, s) * std::norm(uh[m]);
  }
  return pairwise_sum(terms);
}

}  // namespace capflow
