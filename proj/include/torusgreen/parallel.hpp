#pragma once

#include <cstddef>
#include <functional>

namespace torusgreen {

// Worker count: hardware concurrency, capped by TORUSGREEN_THREADS when set.
int worker_count(int requested = 0);

// Calls fn(i) for i in [0, n) on up to `workers` threads. Each index is handled exactly once.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

} // namespace torusgreen
