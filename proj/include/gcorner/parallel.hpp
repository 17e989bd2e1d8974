#pragma once

#include <cstddef>
#include <functional>

namespace gcorner {

/// Worker cap: GABOR_CORNER_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count() noexcept;

/// Calls fn(i) for i in [0, count) on up to worker_count() threads.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace gcorner
