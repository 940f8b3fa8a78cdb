#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace cayscheme {

// Worker count: CAYSCHEME_THREADS if set, else hardware_concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("CAYSCHEME_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Runs f(i) for i in [0, count) across worker threads. Work items are
// claimed from a shared counter; callers that need a deterministic
// result must write into per-index slots and merge in index order.
// The first exception thrown by any worker is rethrown on the caller.
template <class F>
void parallel_for(size_t count, F&& f, unsigned threads = 0) {
  if (count == 0) return;
  unsigned nw = threads ? threads : worker_count();
  if (nw > count) nw = static_cast<unsigned>(count);
  if (nw <= 1) {
    for (size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (unsigned t = 0; t < nw; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          f(i);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace cayscheme
