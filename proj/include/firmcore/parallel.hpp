#pragma once

#include <cstddef>
#include <functional>

namespace firmcore {

/// Runs task(i) for i in [0, count) on up to `threads` worker threads.
/// Tasks must write to disjoint outputs. The first exception thrown by a task
/// is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task);

/// FIRMCORE_THREADS if set to a positive integer, otherwise 1.
std::size_t default_thread_count();

}  // namespace firmcore
