#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace hypercoarsen::detail {

/// Worker cap from HYPERCOARSEN_THREADS (0 or unset means hardware concurrency).
inline unsigned max_threads() {
  static const unsigned cached = [] {
    if (const char* env = std::getenv("HYPERCOARSEN_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1u;
  }();
  return cached;
}

/// Runs f(i) for i in [0, n). Each index writes only its own outputs, so the
/// result is identical for any thread count.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t min_grain = 1 << 12;
  const unsigned workers = max_threads();
  if (workers <= 1 || n < min_grain) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  const std::size_t per = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t lo = c * per;
    const std::size_t hi = std::min(n, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&f, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (std::size_t i = 0; i < std::min(per, n); ++i) f(i);
  for (auto& t : pool) t.join();
}

}  // namespace hypercoarsen::detail
