#pragma once

#include <cstddef>
#include <functional>

namespace jacobi {

/// Worker threads used by the data-parallel loops: JACOBI_THREADS when set
/// to a positive integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(0..n-1) on up to worker_count() threads. Each index is visited
/// exactly once; the first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace jacobi
