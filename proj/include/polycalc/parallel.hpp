#pragma once

#include <cstddef>

namespace polycalc::par {

/// Number of worker threads for the parallel kernels. Resolved once from
/// POLYCALC_THREADS (integer >= 1); 1 means the serial reference path.
int threads();

/// Override the thread count for this process (used by the CLI and tests).
void set_threads(int n);

/// True when kernels should take the OpenMP path.
inline bool enabled() { return threads() > 1; }

}  // namespace polycalc::par
