// SPDX-License-Identifier: Apache-2.0
//
// Thin OpenMP wrapper. Loops handed to parallel_for must write disjoint
// outputs; no reductions happen here so results do not depend on the
// thread count.

#pragma once

#include <cstddef>
#include <functional>

namespace qtr {

/// Environment variable holding the worker thread count (default: all cores).
inline constexpr const char *kThreadsEnv = "QTR_NUM_THREADS";

/// Applies QTR_NUM_THREADS if set. Returns the thread count in effect.
int configure_threads_from_env();

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

} // namespace qtr
