// NEON variant of the principal-value kernel sweep (aarch64 only).

#include "capflow/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace capflow::detail {

void apply_b_neon(const BKernelJob& job, int j0, int j1) {
  const int nb = job.nb, na = job.na;
  const float64x2_t sgn = vdupq_n_f64(job.sgn);
  const float64x2_t one = vdupq_n_f64(1.0);
  int j = j0;
  for (; j + 2 <= j1; j += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (int t = 0; t < job.noff; ++t) {
      const int l = job.off[t];
      const float64x2_t iv = vdupq_n_f64(job.inv[t]);
      const float64x2_t wk = vdupq_n_f64(job.wk[t]);
      float64x2_t np = vld1q_f64(job.h + j - l);
      float64x2_t nm = vld1q_f64(job.h + j + l);
      for (int i = 0; i < nb; ++i) {
        const double* bi = job.b[i];
        const float64x2_t bj = vld1q_f64(bi + j);
        np = vmulq_f64(np, vmulq_f64(vsubq_f64(bj, vld1q_f64(bi + j - l)), iv));
        nm = vmulq_f64(nm, vmulq_f64(vsubq_f64(bj, vld1q_f64(bi + j + l)), iv));
      }
      float64x2_t dp = one, dm = one;
      for (int i = 0; i < na; ++i) {
        const double* ai = job.a[i];
        const float64x2_t aj = vld1q_f64(ai + j);
        const float64x2_t qp = vmulq_f64(vsubq_f64(aj, vld1q_f64(ai + j - l)), iv);
        const float64x2_t qm = vmulq_f64(vsubq_f64(aj, vld1q_f64(ai + j + l)), iv);
        dp = vmulq_f64(dp, vfmaq_f64(one, qp, qp));
        dm = vmulq_f64(dm, vfmaq_f64(one, qm, qm));
      }
      const float64x2_t pair =
          vfmaq_f64(vdivq_f64(np, dp), sgn, vdivq_f64(nm, dm));
      acc = vfmaq_f64(acc, wk, pair);
    }
    vst1q_f64(job.out + j, acc);
  }
  if (j < j1) apply_b_scalar(job, j, j1);
}

}  // namespace capflow::detail

#endif
