#pragma once

#include <cstddef>
#include <functional>

namespace weyllab {

/// Worker count for data-parallel sweeps. Honors WEYLLAB_THREADS, else hardware concurrency.
std::size_t worker_count();

/// Override the worker count for this process (0 restores the default).
void set_worker_count(std::size_t n);

/// Runs body(begin, end) over a static partition of [0, n). Each index is visited
/// exactly once; the partition depends only on n and the worker count, so results
/// written per index are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace weyllab
