#pragma once

#include <cstddef>
#include <functional>

namespace threshforge {

/// Worker cap: min(logical cores, THRESH_FORGE_THREADS when set). Never
/// below 1. The env var is re-read on each call so tests can vary it.
int worker_count();

/// Runs body(begin, end) over disjoint chunks of [0, n), possibly on
/// several threads. Callers must only write to per-index slots so the
/// result does not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace threshforge
