#pragma once

#include <cstddef>
#include <functional>

namespace andovar {

// Worker count for grid sweeps: ANDOVAR_THREADS when set to a positive
// integer, otherwise std::thread::hardware_concurrency() (at least 1).
unsigned thread_count();

// Calls body(i) for i in [0, n) on up to thread_count() threads. Each thread
// gets one contiguous index range; callers write results into per-index slots
// and reduce afterwards in index order, so results do not depend on the
// thread count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace andovar
