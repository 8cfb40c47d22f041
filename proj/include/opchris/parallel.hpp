#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace opchris {

// Worker count: OPCHRIS_WORKERS if set, else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("OPCHRIS_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs f(i) for i in [0, n); results are independent slots, so the reduction
// order downstream stays deterministic regardless of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& f) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace opchris
