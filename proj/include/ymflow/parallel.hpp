#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ymflow {

/// Thread cap: YMFLOW_THREADS env var, default 1. Work is split into ranges
/// with disjoint outputs, so results are identical for any thread count.
inline int thread_cap() {
  static int cap = [] {
    const char* env = std::getenv("YMFLOW_THREADS");
    if (!env || !*env) return 1;
    int v = std::atoi(env);
    if (v < 1) v = 1;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw > 0 && v > hw) v = hw;
    return v;
  }();
  return cap;
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  int nt = thread_cap();
  if (nt <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t chunk = (n + nt - 1) / static_cast<std::size_t>(nt);
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = static_cast<std::size_t>(t) * chunk;
    if (lo >= n) break;
    std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ymflow
