#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace panelbreak {

// Runs fn(i) for i in [0, n). Work items must be independent and write only
// to their own output slot; results are then identical for any thread count,
// which is what the deterministic-reduction contract requires. threads == 0
// means hardware concurrency. If any item throws, the exception from the
// smallest index is rethrown after all threads join.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(threads, n);
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = n;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      // contiguous block partition, fixed given (n, nthreads)
      const std::size_t lo = n * t / nthreads;
      const std::size_t hi = n * (t + 1) / nthreads;
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (i < first_error_index) {
            first_error_index = i;
            first_error = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace panelbreak
