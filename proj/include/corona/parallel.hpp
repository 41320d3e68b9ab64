#pragma once

#include <cstddef>
#include <functional>

namespace corona {

// Worker count: CORONA_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) across worker_count() threads using contiguous
// chunks. Callers write results into per-index slots and reduce afterwards, so
// results never depend on scheduling. The first exception thrown by any
// worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace corona
