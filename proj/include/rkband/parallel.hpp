#pragma once

#include <cstddef>
#include <functional>

namespace rkband {

/// Upper bound on worker threads used by the library; 0 restores the default
/// (std::thread::hardware_concurrency). Results never depend on this value.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(k) for k in [0, count) across up to thread_count() threads in
/// contiguous chunks. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rkband
