#include "capflow/kernels.hpp"

namespace capflow::detail {

// Reference kernel. The SIMD variants must agree with this to rounding noise;
// see tests/test_kernels.cpp.
void apply_b_scalar(const BKernelJob& job, int j0, int j1) {
  const int nb = job.nb, na = job.na;
  const double sgn = job.sgn;
  for (int j = j0; j < j1; ++j) {
    double acc = 0.0;
    for (int t = 0; t < job.noff; ++t) {
      const int l = job.off[t];
      const double iv = job.inv[t];
      const double wk = job.wk[t];
      double np = job.h[j - l];
      double nm = job.h[j + l];
      for (int i = 0; i < nb; ++i) {
        const double* bi = job.b[i];
        const double bj = bi[j];
        np *= (bj - bi[j - l]) * iv;
        nm *= (bj - bi[j + l]) * iv;
      }
      double dp = 1.0, dm = 1.0;
      for (int i = 0; i < na; ++i) {
        const double* ai = job.a[i];
        const double aj = ai[j];
        const double qp = (aj - ai[j - l]) * iv;
        const double qm = (aj - ai[j + l]) * iv;
        dp *= 1.0 + qp * qp;
        dm *= 1.0 + qm * qm;
      }
      acc += wk * (np / dp + sgn * (nm / dm));
    }
    job.out[j] = acc;
  }
}

}  // namespace capflow::detail
