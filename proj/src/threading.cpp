#include "capflow/threading.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace capflow {

namespace {
std::atomic<int> g_threads{0};

int resolve(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n); }

int thread_count() { return resolve(g_threads.load()); }

void parallel_for(int begin, int end, const std::function<void(int, int)>& fn) {
  const int total = end - begin;
  if (total <= 0) return;
  const int nt = std::min(thread_count(), total);
  if (nt <= 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  // Chunks are rounded to multiples of 4 so SIMD kernels see the same
  // vector/tail split at every thread count.
  const int chunk = ((total + nt - 1) / nt + 3) & ~3;
  for (int t = 1; t < nt; ++t) {
    const int b = begin + t * chunk;
    const int e = std::min(end, b + chunk);
    if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(begin, std::min(end, begin + chunk));
  for (auto& th : pool) th.join();
}

}  // namespace capflow
