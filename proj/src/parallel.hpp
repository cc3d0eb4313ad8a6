#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace egue::detail {

inline int resolve_workers(int requested, long tasks) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::clamp<long>(n, 1, std::max<long>(tasks, 1)));
}

/// Runs fn(i) for i in [0, count) on `workers` threads. Indices are handed out
/// dynamically; callers write results into per-index slots, so the outcome is
/// independent of scheduling.
template <class Fn> void parallel_for(long count, int workers, Fn&& fn) {
  workers = resolve_workers(workers, count);
  if (workers == 1) {
    for (long i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

/// Pairwise (cascade) sum of values[begin, end) in a fixed association order.
inline double pairwise_sum(const double* values, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += values[i];
    }
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

} // namespace egue::detail
