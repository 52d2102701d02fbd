#pragma once

// Task-level parallelism. Callers write results into per-index slots and
// reduce them in index order afterwards, so output never depends on the
// number of threads or on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mlab {

/// Thread count used when a call passes 0. Defaults to 1.
unsigned default_threads() noexcept;
void set_default_threads(unsigned threads) noexcept;

namespace detail {
// Set on worker threads so that nested parallel_for calls run serially.
inline thread_local bool in_parallel_region = false;
}  // namespace detail

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned threads = 0) {
  if (threads == 0) threads = default_threads();
  if (detail::in_parallel_region) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    const bool outer = detail::in_parallel_region;
    detail::in_parallel_region = true;
    struct Restore {
      bool v;
      ~Restore() { detail::in_parallel_region = v; }
    } restore{outer};
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace mlab
