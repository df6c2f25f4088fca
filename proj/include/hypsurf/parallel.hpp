#pragma once

#include <cstddef>
#include <functional>

namespace hypsurf {

/// Worker count from HYPSURF_THREADS, falling back to the hardware count.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// is processed exactly once; callers write results into per-index slots
/// and reduce sequentially so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hypsurf
