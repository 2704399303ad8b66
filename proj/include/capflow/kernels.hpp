#pragma once

#include <cstddef>
#include <string>

namespace capflow::detail {

/// One principal-value kernel sweep, fully unpacked for the inner loop.
///
/// Arrays are padded copies: every pointer admits indices in [-pad, n+pad)
/// where pad is the largest offset, with periodic wrap or zero fill already
/// applied. For output node j and offset l (odd multiples of dx) the kernel
/// accumulates the +/- pair
///
///   wk * ( h[j-l] * prod_i((b_i[j]-b_i[j-l])*inv) / prod_i(1+((a_i[j]-a_i[j-l])*inv)^2)
///        + sgn * same with j+l )
///
/// where inv = 1/eta, wk = weight * singular kernel value at eta (1/eta on
/// the line, (pi/P)cot(pi*eta/P) periodic), and sgn = (-1)^(nb+1). The pair is
/// added as a single expression so reflected inputs produce bit-identical
/// reflected outputs.
struct BKernelJob {
  int n = 0;            // output nodes
  int nb = 0;           // numerator factors
  int na = 0;           // denominator factors
  const double* const* b = nullptr;  // nb padded arrays
  const double* const* a = nullptr;  // na padded arrays
  const double* h = nullptr;         // padded density
  const int* off = nullptr;          // odd offsets, ascending
  const double* inv = nullptr;       // 1/eta per offset
  const double* wk = nullptr;        // weight * kernel value per offset
  int noff = 0;
  double sgn = -1.0;
  double* out = nullptr;
};

using BKernelFn = void (*)(const BKernelJob&, int j0, int j1);

void apply_b_scalar(const BKernelJob& job, int j0, int j1);
#if defined(__x86_64__) || defined(_M_X64)
void apply_b_avx2(const BKernelJob& job, int j0, int j1);
#endif
#if defined(__aarch64__)
void apply_b_neon(const BKernelJob& job, int j0, int j1);
#endif

enum class KernelBackend { auto_detect, scalar, avx2, neon };

/// Runtime-selected kernel. auto_detect picks AVX2/NEON when the CPU has it;
/// the CAPFLOW_KERNEL environment variable (scalar|avx2|neon) overrides.
void set_kernel_backend(KernelBackend b);
KernelBackend kernel_backend();
BKernelFn active_kernel();
std::string kernel_name();

}  // namespace capflow::detail
