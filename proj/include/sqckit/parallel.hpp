#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace sqckit {

/// Runs fn(chunk_index, begin, end) over [0, n) split into fixed chunks.
/// Chunk boundaries depend only on (n, threads), so any reduction that
/// combines per-chunk results in chunk order is independent of scheduling.
inline void parallel_chunks(std::size_t n, int threads,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (threads < 1) threads = 1;
  std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), n ? n : 1);
  if (nthreads <= 1) {
    fn(0, 0, n);
    return;
  }
  std::size_t chunk = (n + nthreads - 1) / nthreads;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t c = 0; c < nthreads; ++c) {
    std::size_t b = c * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, c, b, e] { fn(c, b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sqckit
