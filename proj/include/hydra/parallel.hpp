// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace hydra {

/// Thread cap from HYDRA_THREADS (0 or unset means sequential).
int configured_threads();

/// Runs fn(i) for i in [0, n). Iterations must write disjoint state; results
/// are independent of the schedule. n_threads <= 1 runs inline.
void parallel_for(int n, int n_threads, const std::function<void(int)>& fn);

}  // namespace hydra
