#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace sumgauge {

// Runs fn(i) for i in [0, n). Each index writes only its own slot, so the
// result is the same for any thread count; callers do reductions afterwards
// in index order. The lowest-index exception wins, which keeps error
// reporting independent of the thread count too.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors(
      workers, {n, nullptr});
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          fn(i);
        } catch (...) {
          errors[w] = {i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t first = n;
  std::exception_ptr eptr;
  for (const auto& [idx, err] : errors) {
    if (err && idx < first) {
      first = idx;
      eptr = err;
    }
  }
  if (eptr) std::rethrow_exception(eptr);
}

}  // namespace sumgauge
