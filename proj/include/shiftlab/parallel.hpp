#pragma once

#include <functional>

#include "shiftlab/types.hpp"

namespace shiftlab
{

// Worker count: SHIFTLAB_THREADS when set to a positive integer, otherwise the hardware
// concurrency (at least 1).
unsigned worker_count();

// Calls body(i) for i in [0, n) on up to worker_count() threads. Callers write results
// into slot i so the outcome does not depend on scheduling. The first exception thrown
// by any body is rethrown after all workers finish.
void parallel_for(Index n, const std::function<void(Index)> &body);

} // namespace shiftlab
