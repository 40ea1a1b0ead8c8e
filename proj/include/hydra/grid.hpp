// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hydra/egd1d.hpp"
#include "hydra/projection.hpp"
#include "hydra/series.hpp"

namespace hydra {

/// Where within-cell gradients are evaluated.
///   PrevTimeBoth: all four gradients use the previous-time states (v, t-1);
///     this is the convention the worked reference numbers follow.
///   PerHeadPredecessor: head-2 gradients use the previous-variate states
///     (v-1, t), matching each head's own predecessor.
enum class AnchorConvention { PrevTimeBoth, PerHeadPredecessor };

AnchorConvention anchor_from_string(const std::string& s);
std::string to_string(AnchorConvention conv);

enum class GridTraversal { Wavefront, TimeMajor, VariateMajor };

/// Per-cell keys/values/queries and gates for a V x T grid, precomputed from
/// the raw series so the recurrence kernels never touch projections.
struct GridInputs {
    int variates = 0;
    int steps = 0;
    int d_key = 0;
    int d_val = 0;
    std::vector<Vec> keys, vals, queries;   // size V*T, index (v, t)
    std::vector<GateBundle> gates;          // size V*T

    std::size_t idx(int v, int t) const { return static_cast<std::size_t>(v) * steps + t; }
};

GridInputs make_grid_inputs(const SeriesTensor& x, const ProjectionSet& proj,
                            const GateProjection& gp);

/// All V x T cell states of both heads, log domain. States at v = -1 or
/// t = -1 are the fixed initial log-state (zeros, i.e. all-ones memories).
struct GridTrajectory {
    int variates = 0;
    int steps = 0;
    Mat initial;
    std::vector<Mat> head1, head2;  // index (v, t)

    GridTrajectory(int v, int t, int d_val, int d_key);

    std::size_t idx(int v, int t) const { return static_cast<std::size_t>(v) * steps + t; }
    const Mat& h1(int v, int t) const { return (v < 0 || t < 0) ? initial : head1[idx(v, t)]; }
    const Mat& h2(int v, int t) const { return (v < 0 || t < 0) ? initial : head2[idx(v, t)]; }
};

/// One cell of the dual-head recurrence:
///   h1' = alpha h1(v,t-1) - eta g1 + beta h2(v,t-1) - gamma g2
///   h2' = theta h1(v-1,t) - lambda gt1 + mu h2(v-1,t) - omega gt2
/// with g_i the anchored gradients of head i per the convention.
std::pair<Mat, Mat> cell_update(const Mat& h1_prev_t, const Mat& h2_prev_t, const Mat& h1_prev_v,
                                const Mat& h2_prev_v, const Vec& key, const Vec& value,
                                const GateBundle& g, AnchorConvention conv);

/// Exact recurrence over the whole grid. Every cell is computed after its
/// (v, t-1) and (v-1, t) predecessors; the default traversal works through
/// anti-diagonal wavefronts and honors HYDRA_THREADS. All traversals produce
/// bitwise identical trajectories.
GridTrajectory run_grid(const GridInputs& in, AnchorConvention conv,
                        GridTraversal traversal = GridTraversal::Wavefront);

GridTrajectory run_grid(const SeriesTensor& x, const ProjectionSet& proj,
                        const GateProjection& gp, AnchorConvention conv,
                        GridTraversal traversal = GridTraversal::Wavefront);

/// Per-cell readout o(v,t) = w_out * (exp(h1(v,t)) * query(v,t)).
SeriesTensor readout(const GridTrajectory& traj, const std::vector<Vec>& queries, const Mat& w_out);

/// True iff variate v_star's head-1 trajectory is identical (within tol)
/// under both inputs. With beta = gamma = 0 on v_star this holds for any
/// perturbation confined to the other variates.
bool cross_variate_isolation_check(const SeriesTensor& x, const SeriesTensor& perturbed,
                                   const ProjectionSet& proj, const GateProjection& gp,
                                   int v_star, AnchorConvention conv, double tol = 1e-12);

/// Streaming form of the exact recurrence: one time column of states with
/// cached linear-domain copies. Used by the forecaster and the benchmark,
/// where retaining the full trajectory would be wasteful.
struct GridFrontier {
    std::vector<Mat> h1log, h2log;
    std::vector<Mat> h1lin, h2lin;

    static GridFrontier initial(int variates, int d_val, int d_key);
};

/// Advances the frontier by one time step (exact per-cell anchors).
void advance_column(GridFrontier& f, const std::vector<Vec>& keys, const std::vector<Vec>& vals,
                    const std::vector<GateBundle>& gates, AnchorConvention conv);

}  // namespace hydra
