// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hydra/egd1d.hpp"

namespace hydra {

/// Chunk partition of a length-T sequence into ceil(T/b) pieces; the last
/// chunk may be short.
struct ChunkSpec1D {
    int chunk_len = 1;
};

/// Chunk-wise approximation: within each chunk all gradients are evaluated at
/// the frozen anchor state (the last state of the previous chunk, or the
/// initial state for the first chunk), which turns the in-chunk recurrence
///   mlog_t = alpha_t * mlog_{t-1} - eta_t * u_t
/// into a linear one. Chunks are processed sequentially. chunk_len = 1
/// recovers the exact recurrence.
std::vector<LogMemoryState> run_chunked(const LogMemoryState& state0, const std::vector<Vec>& keys,
                                        const std::vector<Vec>& vals,
                                        const std::vector<Gate1D>& gates, const ChunkSpec1D& spec);

/// Same mathematics evaluated per chunk through suffix-product decay
/// coefficients and a batched weighted sum instead of the step loop:
///   mlog_t = (alpha_t...alpha_1) mlog_0 - sum_i (alpha_t...alpha_{i+1}) eta_i u_i.
std::vector<LogMemoryState> run_chunked_closed_form(const LogMemoryState& state0,
                                                    const std::vector<Vec>& keys,
                                                    const std::vector<Vec>& vals,
                                                    const std::vector<Gate1D>& gates,
                                                    const ChunkSpec1D& spec);

/// Max over t of the entrywise absolute gap between the chunked and the exact
/// trajectories, starting from the zero log-state.
double approximation_gap(const std::vector<Vec>& keys, const std::vector<Vec>& vals,
                         const std::vector<Gate1D>& gates, int chunk_len);

}  // namespace hydra
