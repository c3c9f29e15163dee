#pragma once

#include <cstddef>
#include <functional>

namespace mhs {

/// Worker count: set_thread_count() if called, else MHS_THREADS (0 = auto),
/// else hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs fn(i) for i in [0, n). Callers write only to slot i, so results never
/// depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mhs
