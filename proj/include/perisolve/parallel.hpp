#pragma once

#include <cstddef>
#include <functional>

namespace perisolve {

// Worker count from PERISOLVE_THREADS; absent or unparsable means 1.
int thread_count();

// Runs body(i) for i in [0, n). Work items write to disjoint slots owned by
// the caller, so the result is identical for any worker count; reductions
// stay with the caller and run sequentially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace perisolve
