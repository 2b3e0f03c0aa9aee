#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace disentropy::experiments {

/// Worker count: `requested` when non-zero, otherwise the hardware concurrency.
inline unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned n = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

/// Evaluates fn(i) for i in [0, count) on a pool of threads and returns the
/// results in index order. The first exception thrown by a task is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(count);
  const unsigned workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace disentropy::experiments
