#pragma once

#include <cstddef>
#include <functional>

namespace pw {

/// Worker count: `requested` if > 0, else min(hardware, PW_THREADS env).
int effective_threads(int requested);

/// Splits [0, n) into `threads` contiguous blocks and runs fn(begin, end)
/// on each from its own thread.  Work items must be independent; results
/// may not depend on the partition.
void parallel_blocks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace pw
