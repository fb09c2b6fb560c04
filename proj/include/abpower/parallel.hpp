#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace abpower {

// Runs body(i) for i in [0, count) across up to `threads` workers.
// Work is sharded by index, and each index owns its random substream, so
// the result of a deterministic body is independent of the thread count.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace abpower
