#pragma once

#include <cstddef>
#include <functional>

namespace cosetlab {

/// Number of worker threads: hardware concurrency, capped by the
/// COSETLAB_THREADS environment variable when it holds a positive integer.
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Indices are
/// handed out in contiguous chunks; callers write results into slot i so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cosetlab
