#pragma once

// Index-parallel loops. Each index writes only its own output slot, so
// results are identical for every worker count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace netlat {

/// Worker count from NETLAT_WORKERS, default 1.
inline std::size_t worker_count() {
  if (const char *env = std::getenv("NETLAT_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0)
        return static_cast<std::size_t>(std::min<long>(v, 256));
    } catch (const std::exception &) {
    }
  }
  return 1;
}

/// Calls fn(i) for i in [0, count). The first exception thrown by any
/// worker is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, Fn &&fn,
                  std::size_t workers = worker_count()) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error)
            error = std::current_exception();
          next.store(count);
        }
      }
    });
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace netlat
