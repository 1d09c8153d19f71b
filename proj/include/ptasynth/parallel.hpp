#pragma once

#include <cstddef>
#include <functional>

namespace ptasynth {

/// Worker count from PTASYNTH_THREADS, default 1.
std::size_t thread_count();

/// Calls fn(i) for i in [0, n).  Each index is handled exactly once; the
/// first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ptasynth
