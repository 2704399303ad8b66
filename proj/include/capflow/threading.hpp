#pragma once

#include <functional>

namespace capflow {

/// Worker count used by the parallel kernels. 0 restores the hardware default.
void set_thread_count(int n);
int thread_count();

/// Runs fn over contiguous chunks of [begin, end) on thread_count() threads.
/// Chunk boundaries depend only on the range and thread count, and each index
/// is written by exactly one worker, so results are deterministic.
void parallel_for(int begin, int end, const std::function<void(int, int)>& fn);

}  // namespace capflow
