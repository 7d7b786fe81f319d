#pragma once

#include <cstddef>
#include <functional>

namespace hardy {

/// Worker count: hardware concurrency, capped by HARDY_DIRAC_THREADS when set.
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. Work is split
/// into contiguous blocks; callers write results by index so reductions stay
/// in a fixed order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hardy
