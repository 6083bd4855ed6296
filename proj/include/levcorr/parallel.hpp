#pragma once

#include <cstddef>
#include <functional>

namespace levcorr {

/// 0 means "use std::thread::hardware_concurrency()".
unsigned resolve_threads(unsigned requested) noexcept;

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// processed exactly once; callers write results into per-index slots so the
/// output never depends on scheduling. The exception from the lowest failing
/// index is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace levcorr
