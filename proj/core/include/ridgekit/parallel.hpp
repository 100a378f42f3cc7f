#pragma once

#include <cstddef>
#include <functional>

namespace ridgekit {

/// Worker count: RIDGEKIT_THREADS if set, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; results
/// must be written to per-index slots so that merges stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace ridgekit
