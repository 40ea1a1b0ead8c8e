// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hydra/grid.hpp"

namespace hydra::bench {

/// Column-ordered inputs with one fixed gate bundle, as used by the
/// throughput comparison (input-dependent gates would add equal cost to both
/// strategies).
struct StreamInputs {
    int variates = 1;
    int steps = 1;
    int d_key = 1;
    int d_val = 1;
    std::vector<Vec> keys, vals;  // index (v, t) = v * steps + t
    GateBundle gates;

    std::size_t idx(int v, int t) const { return static_cast<std::size_t>(v) * steps + t; }
};

StreamInputs random_inputs(int variates, int steps, int dim, std::uint64_t seed);

/// Exact per-cell recurrence (per-head predecessor anchors), one column of
/// state retained. Returns the final column.
GridFrontier run_exact_stream(const StreamInputs& in);

/// Time-chunked evaluation with b_v = V: anchored gradients for a whole chunk
/// are precomputed as batched matrix products against the two frozen corner
/// anchors, then the in-chunk linear recurrence is swept without any
/// per-cell exponentials. Matches run_grid_chunked({time_chunk, V}).
GridFrontier run_chunked_stream(const StreamInputs& in, int time_chunk);

struct BenchConfig {
    int steps = 4096;
    int variates = 8;
    int dim = 64;
    int time_chunk = 64;
    int reps = 3;
    std::uint64_t seed = 1;
};

struct BenchResult {
    std::vector<double> exact_ms, chunked_ms;
    double exact_median_ms = 0.0;
    double chunked_median_ms = 0.0;
    double speedup = 0.0;
    double exact_checksum = 0.0;
    double chunked_checksum = 0.0;
};

BenchResult run(const BenchConfig& cfg);

std::string render_text(const BenchConfig& cfg, const BenchResult& r);
std::string render_csv(const BenchConfig& cfg, const BenchResult& r);

}  // namespace hydra::bench
