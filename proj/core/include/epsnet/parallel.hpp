#pragma once

#include <cstddef>
#include <functional>

namespace epsnet {

/// Worker count used by parallel loops. Defaults to EPSNET_THREADS when set,
/// otherwise std::thread::hardware_concurrency().
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n). Iterations are split into contiguous blocks; the body
/// must only write to slots owned by its index so results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace epsnet
