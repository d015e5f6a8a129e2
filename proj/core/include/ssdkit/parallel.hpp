#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace ssdkit {

/// Process-wide worker-pool size for suite fan-out; set once by the CLI or
/// scenario runner before suites execute. Results always land in
/// caller-owned slots indexed by iteration, so reports do not depend on it.
std::atomic<int>& worker_count_storage();
inline int worker_count() { return worker_count_storage().load(); }
inline void set_worker_count(int n) { worker_count_storage().store(n < 1 ? 1 : n); }

/// Static strided partition over [0, n); results land in caller-owned slots,
/// so output order (and therefore every report) is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += count) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  parallel_for(n, worker_count(), std::forward<Fn>(fn));
}

}  // namespace ssdkit
