#pragma once

#include <cstddef>
#include <functional>

namespace equidep {

// Resolves a worker-count request: 0 (or negative) means "use hardware
// concurrency", anything else is taken as given.
int effective_workers(int requested);

// Runs fn(0) .. fn(count-1) across `workers` threads. Task order within a
// thread is ascending, and callers must write results into per-index slots;
// under that contract output is independent of the worker count.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace equidep
