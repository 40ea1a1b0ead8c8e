// SPDX-License-Identifier: Apache-2.0
#include "hydra/chunked2d.hpp"

#include <algorithm>
#include <stdexcept>

#include "hydra/parallel.hpp"

namespace hydra {

std::vector<ChunkRect> chunk_grid(int steps, int variates, const ChunkSpec2D& spec) {
    if (spec.time_chunk < 1 || spec.time_chunk > steps || spec.variate_chunk < 1 ||
        spec.variate_chunk > variates)
        throw std::invalid_argument("chunk_grid: need 1 <= b_t <= T and 1 <= b_v <= V");
    std::vector<ChunkRect> out;
    int i = 0;
    for (int t0 = 0; t0 < steps; t0 += spec.time_chunk, ++i) {
        int j = 0;
        for (int v0 = 0; v0 < variates; v0 += spec.variate_chunk, ++j) {
            out.push_back(ChunkRect{t0, std::min(t0 + spec.time_chunk, steps), v0,
                                    std::min(v0 + spec.variate_chunk, variates), i, j});
        }
    }
    return out;
}

namespace {

void process_chunk(GridTrajectory& traj, const GridInputs& in, const ChunkRect& c) {
    // Corner anchors; coordinates off the grid resolve to the initial state.
    const Mat time_anchor1 = emap_exp(traj.h1(c.v1 - 1, c.t0 - 1));
    const Mat time_anchor2 = emap_exp(traj.h2(c.v1 - 1, c.t0 - 1));
    const Mat var_anchor1 = emap_exp(traj.h1(c.v0 - 1, c.t1 - 1));
    const Mat var_anchor2 = emap_exp(traj.h2(c.v0 - 1, c.t1 - 1));

    const int rows = c.v1 - c.v0;
    const int cols = c.t1 - c.t0;
    auto local = [&](int v, int t) {
        return static_cast<std::size_t>(v - c.v0) * cols + (t - c.t0);
    };

    // Anchored gradients for every cell, computable before the recurrence.
    std::vector<Mat> u1(static_cast<std::size_t>(rows) * cols), u2(u1.size()), p1(u1.size()),
        p2(u1.size());
    for (int v = c.v0; v < c.v1; ++v) {
        for (int t = c.t0; t < c.t1; ++t) {
            const std::size_t g = in.idx(v, t);
            const std::size_t l = local(v, t);
            u1[l] = grad(time_anchor1, in.keys[g], in.vals[g]);
            u2[l] = grad(time_anchor2, in.keys[g], in.vals[g]);
            p1[l] = grad(var_anchor1, in.keys[g], in.vals[g]);
            p2[l] = grad(var_anchor2, in.keys[g], in.vals[g]);
        }
    }

    for (int v = c.v0; v < c.v1; ++v) {
        for (int t = c.t0; t < c.t1; ++t) {
            const std::size_t g = in.idx(v, t);
            const std::size_t l = local(v, t);
            const GateBundle& gate = in.gates[g];
            const Mat& h1_prev_t = traj.h1(v, t - 1);
            const Mat& h2_prev_t = traj.h2(v, t - 1);
            const Mat& h1_prev_v = traj.h1(v - 1, t);
            const Mat& h2_prev_v = traj.h2(v - 1, t);
            Mat new1(in.d_val, in.d_key);
            Mat new2(in.d_val, in.d_key);
            for (std::size_t e = 0; e < new1.data.size(); ++e) {
                new1.data[e] = gate.alpha * h1_prev_t.data[e] - gate.eta * u1[l].data[e] +
                               gate.beta * h2_prev_t.data[e] - gate.gamma * u2[l].data[e];
                new2.data[e] = gate.theta * h1_prev_v.data[e] - gate.lambda * p1[l].data[e] +
                               gate.mu * h2_prev_v.data[e] - gate.omega * p2[l].data[e];
            }
            traj.head1[in.idx(v, t)] = std::move(new1);
            traj.head2[in.idx(v, t)] = std::move(new2);
        }
    }
}

}  // namespace

GridTrajectory run_grid_chunked(const GridInputs& in, const ChunkSpec2D& spec) {
    GridTrajectory traj(in.variates, in.steps, in.d_val, in.d_key);
    const std::vector<ChunkRect> chunks = chunk_grid(in.steps, in.variates, spec);
    const int n_i = (in.steps + spec.time_chunk - 1) / spec.time_chunk;
    const int n_j = (in.variates + spec.variate_chunk - 1) / spec.variate_chunk;
    const int threads = configured_threads();

    // Anti-diagonal wavefronts over the chunk grid; chunks on one wavefront
    // have no mutual dependencies.
    for (int s = 0; s <= n_i + n_j - 2; ++s) {
        std::vector<const ChunkRect*> wave;
        for (const ChunkRect& c : chunks)
            if (c.i + c.j == s) wave.push_back(&c);
        parallel_for(static_cast<int>(wave.size()), threads,
                     [&](int k) { process_chunk(traj, in, *wave[static_cast<std::size_t>(k)]); });
    }
    return traj;
}

GridTrajectory run_grid_chunked(const SeriesTensor& x, const ProjectionSet& proj,
                                const GateProjection& gp, const ChunkSpec2D& spec) {
    return run_grid_chunked(make_grid_inputs(x, proj, gp), spec);
}

namespace {

void check_row(const RowChunkInputs& row) {
    const std::size_t n = row.alpha.size();
    if (n == 0) throw std::invalid_argument("row expansion: empty row");
    if (row.beta.size() != n || row.eta.size() != n || row.gamma.size() != n ||
        row.g1.size() != n || row.g2.size() != n)
        throw std::invalid_argument("row expansion: per-position lists must share one length");
}

}  // namespace

Mat expand_chunk_row_loop(const RowChunkInputs& row) {
    check_row(row);
    Mat s = row.m1_entry;
    Mat r = row.m2_entry;
    for (std::size_t t = 0; t < row.alpha.size(); ++t) {
        for (std::size_t e = 0; e < s.data.size(); ++e) {
            s.data[e] = row.alpha[t] * s.data[e] - row.eta[t] * row.g1[t].data[e];
            r.data[e] = row.beta[t] * r.data[e] - row.gamma[t] * row.g2[t].data[e];
        }
    }
    Mat out = s;
    for (std::size_t e = 0; e < out.data.size(); ++e) out.data[e] += r.data[e];
    return out;
}

Mat expand_chunk_closed_form(const RowChunkInputs& row) {
    check_row(row);
    const std::vector<double> decay_a = suffix_products(row.alpha);
    const std::vector<double> decay_b = suffix_products(row.beta);
    const double full_a = row.alpha[0] * decay_a[0];
    const double full_b = row.beta[0] * decay_b[0];

    Mat out(row.m1_entry.rows, row.m1_entry.cols);
    for (std::size_t e = 0; e < out.data.size(); ++e) {
        double acc = full_a * row.m1_entry.data[e] + full_b * row.m2_entry.data[e];
        for (std::size_t i = 0; i < row.alpha.size(); ++i) {
            acc -= decay_a[i] * row.eta[i] * row.g1[i].data[e];
            acc -= decay_b[i] * row.gamma[i] * row.g2[i].data[e];
        }
        out.data[e] = acc;
    }
    return out;
}

double approximation_gap_2d(const SeriesTensor& x, const ProjectionSet& proj,
                            const GateProjection& gp, const ChunkSpec2D& spec) {
    const GridInputs in = make_grid_inputs(x, proj, gp);
    const GridTrajectory exact = run_grid(in, AnchorConvention::PerHeadPredecessor);
    const GridTrajectory approx = run_grid_chunked(in, spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.head1.size(); ++i) {
        worst = std::max(worst, max_abs_diff(exact.head1[i], approx.head1[i]));
        worst = std::max(worst, max_abs_diff(exact.head2[i], approx.head2[i]));
    }
    return worst;
}

}  // namespace hydra
