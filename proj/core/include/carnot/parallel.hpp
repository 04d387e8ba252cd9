#pragma once

#include <cstddef>
#include <functional>

namespace carnot {

// Number of worker threads: CARNOT_THREADS when set (>= 1), otherwise the
// hardware concurrency.
int worker_count();

// Runs fn(0..n-1); items are independent and results must be written to
// per-index slots so merged output is deterministic.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace carnot
