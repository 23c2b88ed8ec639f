#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace atem::detail {

inline int resolve_thread_count(int requested, std::size_t work_items) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(threads, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(work_items, 1)));
}

/// Calls fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const int workers = resolve_thread_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace atem::detail
