#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace mirrorlab {

// Order-preserving parallel map over [0, n). Every job must be a pure
// function of its index; results land in slot i regardless of scheduling, so
// output is deterministic.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn, bool parallel = true) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  unsigned workers = parallel ? std::thread::hardware_concurrency() : 1;
  if (workers <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        out[i] = fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace mirrorlab
