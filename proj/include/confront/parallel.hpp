#pragma once

#include <cstddef>
#include <functional>

namespace confront {

/// Worker count: CONFRONT_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers. The first
/// exception thrown by any call is rethrown after all workers join. Calls
/// made from inside a worker run sequentially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace confront
