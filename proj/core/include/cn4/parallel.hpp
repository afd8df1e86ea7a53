#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cn4 {

// 0 means "all hardware threads".
inline unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls fn(i, worker) for every i in [0, n). Items are claimed in chunks of
// `grain` from a shared counter, so which worker runs an item is not fixed;
// callers keep per-worker accumulators and combine them order-insensitively.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn, std::size_t grain = 1) {
  threads = std::max(1u, threads);
  grain = std::max<std::size_t>(1, grain);
  if (threads == 1 || n <= grain) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0u);
    return;
  }
  std::size_t chunks = (n + grain - 1) / grain;
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&](unsigned w) {
    try {
      for (;;) {
        std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= chunks) return;
        std::size_t end = std::min(n, (c + 1) * grain);
        for (std::size_t i = c * grain; i < end; ++i) fn(i, w);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(chunks);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Number of per-worker slots parallel_for may touch.
inline unsigned worker_slots(std::size_t n, unsigned threads, std::size_t grain = 1) {
  threads = std::max(1u, threads);
  grain = std::max<std::size_t>(1, grain);
  std::size_t chunks = (n + grain - 1) / grain;
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, chunks)));
}

}  // namespace cn4
