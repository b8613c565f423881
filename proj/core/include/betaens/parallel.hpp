#pragma once

#include <cstddef>
#include <functional>

namespace betaens {

/// Worker count to use: BETA_ENSEMBLE_THREADS if set to a positive integer,
/// otherwise `requested`, otherwise (0) the hardware concurrency.
std::size_t resolve_worker_count(std::size_t requested);

/// Calls body(i) for every i in [0, count) on up to `workers` threads.
/// Each index is visited exactly once; callers write results into slot i so
/// the outcome does not depend on scheduling. The first exception thrown by
/// any body is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace betaens
