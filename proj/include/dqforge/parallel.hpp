#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace dq {

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware count).
// Work items are distributed statically so results can be written into
// preallocated slots; callers must not rely on execution order.
inline void parallelFor(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  unsigned workerCount = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  if (workerCount == 0) workerCount = 1;
  if (workerCount <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (workerCount > n) workerCount = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(workerCount);
  for (unsigned w = 0; w < workerCount; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workerCount) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dq
