#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace smn {

// SMN_THREADS caps internal parallelism; unset or 0 means hardware default.
inline int thread_count() {
  static const int n = [] {
    if (const char* env = std::getenv("SMN_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return n;
}

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// The chunk layout depends only on n and chunk_size, never on the thread
// count, so per-chunk partial results are reproducible; callers reduce them
// in chunk order to keep floating-point sums bitwise deterministic.
template <typename Fn>
void for_each_chunk(std::size_t n, std::size_t chunk_size, Fn&& fn) {
  if (n == 0) return;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  const int workers =
      static_cast<int>(std::min<std::size_t>(thread_count(), n_chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

}  // namespace smn
