// AVX2 variant of the principal-value kernel sweep. Compiled with -mavx2
// -mfma for this translation unit only; dispatch checks the CPU at runtime.

#include "capflow/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace capflow::detail {

void apply_b_avx2(const BKernelJob& job, int j0, int j1) {
  const int nb = job.nb, na = job.na;
  const __m256d sgn = _mm256_set1_pd(job.sgn);
  const __m256d one = _mm256_set1_pd(1.0);
  int j = j0;
  for (; j + 4 <= j1; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int t = 0; t < job.noff; ++t) {
      const int l = job.off[t];
      const __m256d iv = _mm256_set1_pd(job.inv[t]);
      const __m256d wk = _mm256_set1_pd(job.wk[t]);
      __m256d np = _mm256_loadu_pd(job.h + j - l);
      __m256d nm = _mm256_loadu_pd(job.h + j + l);
      for (int i = 0; i < nb; ++i) {
        const double* bi = job.b[i];
        const __m256d bj = _mm256_loadu_pd(bi + j);
        np = _mm256_mul_pd(np, _mm256_mul_pd(_mm256_sub_pd(bj, _mm256_loadu_pd(bi + j - l)), iv));
        nm = _mm256_mul_pd(nm, _mm256_mul_pd(_mm256_sub_pd(bj, _mm256_loadu_pd(bi + j + l)), iv));
      }
      __m256d dp = one, dm = one;
      for (int i = 0; i < na; ++i) {
        const double* ai = job.a[i];
        const __m256d aj = _mm256_loadu_pd(ai + j);
        const __m256d qp = _mm256_mul_pd(_mm256_sub_pd(aj, _mm256_loadu_pd(ai + j - l)), iv);
        const __m256d qm = _mm256_mul_pd(_mm256_sub_pd(aj, _mm256_loadu_pd(ai + j + l)), iv);
        dp = _mm256_mul_pd(dp, _mm256_fmadd_pd(qp, qp, one));
        dm = _mm256_mul_pd(dm, _mm256_fmadd_pd(qm, qm, one));
      }
      const __m256d pair =
          _mm256_fmadd_pd(sgn, _mm256_div_pd(nm, dm), _mm256_div_pd(np, dp));
      acc = _mm256_fmadd_pd(wk, pair, acc);
    }
    _mm256_storeu_pd(job.out + j, acc);
  }
  if (j < j1) apply_b_scalar(job, j, j1);
}

}  // namespace capflow::detail

#endif
