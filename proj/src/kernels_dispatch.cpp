#include "capflow/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace capflow::detail {

namespace {

std::atomic<KernelBackend> g_backend{KernelBackend::auto_detect};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

KernelBackend from_env() {
  const char* e = std::getenv("CAPFLOW_KERNEL");
  if (!e) return KernelBackend::auto_detect;
  const std::string s(e);
  if (s == "scalar") return KernelBackend::scalar;
  if (s == "avx2") return KernelBackend::avx2;
  if (s == "neon") return KernelBackend::neon;
  return KernelBackend::auto_detect;
}

KernelBackend resolve(KernelBackend b) {
  if (b == KernelBackend::auto_detect) b = from_env();
  if (b == KernelBackend::auto_detect) {
#if defined(__aarch64__)
    b = KernelBackend::neon;
#else
    b = cpu_has_avx2() ? KernelBackend::avx2 : KernelBackend::scalar;
#endif
  }
  return b;
}

}  // namespace

void set_kernel_backend(KernelBackend b) { g_backend.store(b); }

KernelBackend kernel_backend() { return resolve(g_backend.load()); }

BKernelFn active_kernel() {
  switch (kernel_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case KernelBackend::avx2:
      if (!cpu_has_avx2()) throw std::runtime_error("avx2 backend requested but the CPU lacks AVX2/FMA");
      return &apply_b_avx2;
#endif
#if defined(__aarch64__)
    case KernelBackend::neon:
      return &apply_b_neon;
#endif
    case KernelBackend::scalar:
    default:
      return &apply_b_scalar;
  }
}

std::string kernel_name() {
  switch (kernel_backend()) {
    case KernelBackend::avx2: return "avx2";
    case KernelBackend::neon: return "neon";
    case KernelBackend::scalar: return "scalar";
    default: return "auto";
  }
}

}  // namespace capflow::detail
