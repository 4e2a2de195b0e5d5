#pragma once

#include <cstddef>
#include <functional>

namespace spinbatt {

/// Worker count from SPINBATT_WORKERS, else hardware concurrency; >= 1.
int default_worker_count();

/// Runs fn(0) ... fn(n-1) on up to `workers` threads (0 = default count).
/// Items are independent; the first exception is rethrown after all
/// workers finish.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace spinbatt
