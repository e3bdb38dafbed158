#pragma once

#include <cstddef>
#include <functional>

namespace spinbath {

/// Worker count used by parallel_for. Defaults to SPINBATH_THREADS when set,
/// otherwise the hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Calls body(i) for i in [0, n). Each index is handled exactly once; results
/// written to per-index slots are deterministic regardless of thread count.
/// The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace spinbath
