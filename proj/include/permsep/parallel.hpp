#pragma once

#include <cstddef>
#include <functional>

namespace permsep {

/// Worker count: PERMSEP_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
int thread_count();

/// Calls body(i) for every i in [0, n), spread over thread_count() workers in
/// contiguous chunks. Results must be written to per-index storage; the first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace permsep
