#pragma once

#include <cstddef>
#include <functional>

namespace pathplan {

// Worker cap from PATHPLAN_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

// Runs fn(0..n-1) over up to worker_count() threads. Each index runs once;
// callers write results into their own slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pathplan
