#ifndef LEMNI_PARALLEL_HPP
#define LEMNI_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lemni {

inline int& thread_count_ref() {
  static int n = int(std::thread::hardware_concurrency());
  return n;
}

inline void set_threads(int n) { thread_count_ref() = n > 0 ? n : 1; }
inline int threads() { return thread_count_ref() > 0 ? thread_count_ref() : 1; }

// Chunked parallel loop over [0, n).  Results must not depend on chunk
// assignment; reductions are done by the caller in index order.
inline void parallel_for(size_t n, const std::function<void(size_t, size_t)>& body) {
  int nt = threads();
  if (nt <= 1 || n < 64) {
    body(0, n);
    return;
  }
  size_t chunk = (n + size_t(nt) - 1) / size_t(nt);
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) {
    size_t lo = size_t(t) * chunk;
    size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace lemni

#endif
