#pragma once

#include <cstddef>
#include <functional>

namespace ksc {

/// Worker count: KSC_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Splits [0, n) into contiguous chunks of at least `grain` items and runs
/// `body(begin, end)` on each, possibly concurrently. Chunks never overlap,
/// so bodies that only write their own output range are deterministic.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ksc
