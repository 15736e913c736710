#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace lunelab {

// worker count: LUNELAB_THREADS when set to a positive integer, otherwise the
// hardware concurrency
inline unsigned thread_count() {
  if (const char* env = std::getenv("LUNELAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return (unsigned)v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// index-sharded loop; rethrows the exception of the lowest failing index so
// outcomes do not depend on thread timing
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned k = std::min<std::size_t>(thread_count(), n);
  if (k <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w + 1 < k; ++w) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  if (failed.load())
    for (std::size_t i = 0; i < n; ++i)
      if (errors[i]) std::rethrow_exception(errors[i]);
}

}  // namespace lunelab
