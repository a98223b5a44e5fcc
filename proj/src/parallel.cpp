#include "pilotwave/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace pw {

int effective_threads(int requested) {
  if (requested > 0) return requested;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("PW_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) hw = std::min(hw, v);
  }
  return hw;
}

void parallel_blocks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int b = 0; b < threads; ++b) {
    const std::size_t begin = n * static_cast<std::size_t>(b) / static_cast<std::size_t>(threads);
    const std::size_t end =
        n * static_cast<std::size_t>(b + 1) / static_cast<std::size_t>(threads);
    if (begin == end) continue;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace pw
