// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hydra/grid.hpp"

namespace hydra {

/// Rectangular chunking of the (variate, time) grid. Edge chunks keep their
/// natural smaller size when T or V is not divisible.
struct ChunkSpec2D {
    int time_chunk = 1;
    int variate_chunk = 1;
};

/// Half-open cell ranges of one chunk plus its chunk-grid coordinates.
struct ChunkRect {
    int t0, t1;  // time range [t0, t1)
    int v0, v1;  // variate range [v0, v1)
    int i, j;    // chunk-grid coordinates (time-major, variate-major)
};

/// All chunks in raster order; their count is ceil(T/b_t) * ceil(V/b_v).
std::vector<ChunkRect> chunk_grid(int steps, int variates, const ChunkSpec2D& spec);

/// Chunk-wise approximation of the 2D recurrence. Within chunk (i, j) the
/// head-1 gradients of every cell are anchored at the time corner
/// (t0 - 1, v1 - 1) and the head-2 gradients at the variate corner
/// (t1 - 1, v0 - 1); corners outside the grid fall back to the initial
/// state. All anchored gradients are precomputed before the in-chunk linear
/// recurrence runs. Chunks are swept in anti-diagonal wavefronts. At
/// b_t = b_v = 1 this equals the exact grid with per-head predecessor
/// anchors.
GridTrajectory run_grid_chunked(const GridInputs& in, const ChunkSpec2D& spec);

GridTrajectory run_grid_chunked(const SeriesTensor& x, const ProjectionSet& proj,
                                const GateProjection& gp, const ChunkSpec2D& spec);

/// One single-variate row slice of a chunk: entry states of both heads plus
/// per-position gates and anchored gradient matrices. Along such a row the
/// two contributions evolve as independent gated chains
///   S_t = alpha_t S_{t-1} - eta_t G1_t,   S_0 = m1_entry,
///   R_t = beta_t  R_{t-1} - gamma_t G2_t, R_0 = m2_entry,
/// and the head-1 state is their sum. A length-1 row therefore equals one
/// step of the in-chunk linear recurrence exactly.
struct RowChunkInputs {
    Mat m1_entry, m2_entry;
    std::vector<double> alpha, beta, eta, gamma;
    std::vector<Mat> g1, g2;
};

/// Final head-1 state of the row by iterating the two chains.
Mat expand_chunk_row_loop(const RowChunkInputs& row);

/// Final head-1 state of the row in closed form,
///   (alpha_T...alpha_1) m1_entry + (beta_T...beta_1) m2_entry
///     - sum_i (alpha_T...alpha_{i+1}) eta_i G1_i
///     - sum_i (beta_T...beta_{i+1}) gamma_i G2_i,
/// with the decay diagonals built through suffix_products.
Mat expand_chunk_closed_form(const RowChunkInputs& row);

/// Max entrywise absolute difference, over all cells and both heads, between
/// the chunked trajectory and the exact per-cell trajectory with the same
/// (per-head predecessor) anchor convention.
double approximation_gap_2d(const SeriesTensor& x, const ProjectionSet& proj,
                            const GateProjection& gp, const ChunkSpec2D& spec);

}  // namespace hydra
