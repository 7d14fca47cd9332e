#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tetra::par {

/// Worker cap: min(hardware_concurrency, TETRA_THREADS if set). At least 1.
inline int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("TETRA_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

/// Runs fn(i) for i in [0, n) across worker threads with static chunking.
/// fn must be safe to call concurrently for distinct i; results written by
/// index are deterministic regardless of the schedule.
template <typename Fn>
void parallel_for(long n, Fn&& fn) {
  if (n <= 0) return;
  const int nthreads = static_cast<int>(std::min<long>(max_threads(), n));
  if (nthreads <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    const long lo = n * t / nthreads;
    const long hi = n * (t + 1) / nthreads;
    pool.emplace_back([lo, hi, &fn] {
      for (long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tetra::par
