#pragma once

#include <cstddef>
#include <functional>

namespace equistrat {

/// Worker count: hardware concurrency, capped by EQUISTRAT_THREADS when set.
int thread_count();

/// Runs body(i) for i in [0, n). Each index runs exactly once; results must
/// be written to per-index slots so the outcome does not depend on scheduling.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace equistrat
