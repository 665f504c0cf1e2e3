#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace oamp {

/// Runs fn(i) for i in [0, count) across worker threads. Results must be
/// written to preallocated per-index slots by the caller, which keeps the
/// output independent of scheduling.
template <typename Fn>
void parallel_for(int count, Fn&& fn, int num_threads = 0) {
  if (num_threads <= 0) num_threads = int(std::thread::hardware_concurrency());
  if (num_threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::atomic<int> next{0};
  const int workers_n = std::min(num_threads, count);
  workers.reserve(workers_n);
  for (int w = 0; w < workers_n; ++w) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace oamp
