#pragma once

#include <omp.h>

namespace tcs {

/// Worker count for an OpenMP region; threads <= 0 means the runtime default.
inline int resolve_threads(int threads) noexcept { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace tcs
