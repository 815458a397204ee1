#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace kron {

// Runs fn(i) for i in [begin, end) across the given number of threads in
// contiguous chunks. fn must be safe to call concurrently for distinct i.
inline void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                         const std::function<void(std::int64_t)>& fn) {
  std::int64_t count = end - begin;
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = begin + w * chunk;
    std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline int default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace kron
