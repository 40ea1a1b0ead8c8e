// SPDX-License-Identifier: Apache-2.0
#include "hydra/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "hydra/parallel.hpp"

namespace hydra {

AnchorConvention anchor_from_string(const std::string& s) {
    if (s == "prev_time_both") return AnchorConvention::PrevTimeBoth;
    if (s == "per_head_predecessor") return AnchorConvention::PerHeadPredecessor;
    throw std::invalid_argument("unknown anchor convention '" + s + "'");
}

std::string to_string(AnchorConvention conv) {
    return conv == AnchorConvention::PrevTimeBoth ? "prev_time_both" : "per_head_predecessor";
}

GridInputs make_grid_inputs(const SeriesTensor& x, const ProjectionSet& proj,
                            const GateProjection& gp) {
    GridInputs in;
    in.variates = x.variates;
    in.steps = x.steps;
    in.d_key = proj.w_key.rows;
    in.d_val = proj.w_val.rows;
    const std::size_t n = static_cast<std::size_t>(x.variates) * x.steps;
    in.keys.resize(n);
    in.vals.resize(n);
    in.queries.resize(n);
    in.gates.resize(n);
    for (int v = 0; v < x.variates; ++v) {
        for (int t = 0; t < x.steps; ++t) {
            const Vec cell = x.cell(v, t);
            KvqTriple kvq = project_kvq(proj, cell);
            const std::size_t i = in.idx(v, t);
            in.keys[i] = std::move(kvq.key);
            in.vals[i] = std::move(kvq.value);
            in.queries[i] = std::move(kvq.query);
            in.gates[i] = compute_gates(gp, cell);
        }
    }
    return in;
}

GridTrajectory::GridTrajectory(int v, int t, int d_val, int d_key)
    : variates(v), steps(t), initial(d_val, d_key, 0.0) {
    if (v < 1 || t < 1) throw std::invalid_argument("GridTrajectory: V, T must be >= 1");
    head1.assign(static_cast<std::size_t>(v) * t, Mat());
    head2.assign(static_cast<std::size_t>(v) * t, Mat());
}

std::pair<Mat, Mat> cell_update(const Mat& h1_prev_t, const Mat& h2_prev_t, const Mat& h1_prev_v,
                                const Mat& h2_prev_v, const Vec& key, const Vec& value,
                                const GateBundle& g, AnchorConvention conv) {
    g.validate();
    const bool per_head = conv == AnchorConvention::PerHeadPredecessor;
    const Mat g1 = grad(emap_exp(h1_prev_t), key, value);
    const Mat g2 = grad(emap_exp(h2_prev_t), key, value);
    Mat gt1_own, gt2_own;
    if (per_head) {
        gt1_own = grad(emap_exp(h1_prev_v), key, value);
        gt2_own = grad(emap_exp(h2_prev_v), key, value);
    }
    const Mat& gt1 = per_head ? gt1_own : g1;
    const Mat& gt2 = per_head ? gt2_own : g2;
    Mat new1(h1_prev_t.rows, h1_prev_t.cols);
    Mat new2(h1_prev_t.rows, h1_prev_t.cols);
    for (std::size_t i = 0; i < new1.data.size(); ++i) {
        new1.data[i] = g.alpha * h1_prev_t.data[i] - g.eta * g1.data[i] +
                       g.beta * h2_prev_t.data[i] - g.gamma * g2.data[i];
        new2.data[i] = g.theta * h1_prev_v.data[i] - g.lambda * gt1.data[i] +
                       g.mu * h2_prev_v.data[i] - g.omega * gt2.data[i];
    }
    return {std::move(new1), std::move(new2)};
}

namespace {

void compute_cell(GridTrajectory& traj, const GridInputs& in, AnchorConvention conv, int v, int t) {
    const std::size_t i = in.idx(v, t);
    auto updated = cell_update(traj.h1(v, t - 1), traj.h2(v, t - 1), traj.h1(v - 1, t),
                               traj.h2(v - 1, t), in.keys[i], in.vals[i], in.gates[i], conv);
    traj.head1[i] = std::move(updated.first);
    traj.head2[i] = std::move(updated.second);
}

}  // namespace

GridTrajectory run_grid(const GridInputs& in, AnchorConvention conv, GridTraversal traversal) {
    GridTrajectory traj(in.variates, in.steps, in.d_val, in.d_key);
    switch (traversal) {
        case GridTraversal::TimeMajor:
            for (int t = 0; t < in.steps; ++t)
                for (int v = 0; v < in.variates; ++v) compute_cell(traj, in, conv, v, t);
            break;
        case GridTraversal::VariateMajor:
            for (int v = 0; v < in.variates; ++v)
                for (int t = 0; t < in.steps; ++t) compute_cell(traj, in, conv, v, t);
            break;
        case GridTraversal::Wavefront: {
            const int threads = configured_threads();
            for (int s = 0; s <= in.variates + in.steps - 2; ++s) {
                const int v_lo = s < in.steps ? 0 : s - in.steps + 1;
                const int v_hi = s < in.variates ? s : in.variates - 1;
                parallel_for(v_hi - v_lo + 1, threads, [&](int k) {
                    const int v = v_lo + k;
                    compute_cell(traj, in, conv, v, s - v);
                });
            }
            break;
        }
    }
    return traj;
}

GridTrajectory run_grid(const SeriesTensor& x, const ProjectionSet& proj, const GateProjection& gp,
                        AnchorConvention conv, GridTraversal traversal) {
    return run_grid(make_grid_inputs(x, proj, gp), conv, traversal);
}

SeriesTensor readout(const GridTrajectory& traj, const std::vector<Vec>& queries,
                     const Mat& w_out) {
    if (queries.size() != traj.head1.size())
        throw std::invalid_argument("readout: one query per cell required");
    SeriesTensor out(traj.variates, traj.steps, w_out.rows);
    for (int v = 0; v < traj.variates; ++v) {
        for (int t = 0; t < traj.steps; ++t) {
            const std::size_t i = traj.idx(v, t);
            Vec o = matvec(w_out, matvec(emap_exp(traj.head1[i]), queries[i]));
            for (int f = 0; f < w_out.rows; ++f) out.at(v, t, f) = o[static_cast<std::size_t>(f)];
        }
    }
    return out;
}

bool cross_variate_isolation_check(const SeriesTensor& x, const SeriesTensor& perturbed,
                                   const ProjectionSet& proj, const GateProjection& gp, int v_star,
                                   AnchorConvention conv, double tol) {
    if (v_star < 0 || v_star >= x.variates)
        throw std::invalid_argument("cross_variate_isolation_check: v_star out of range");
    GridTrajectory a = run_grid(x, proj, gp, conv);
    GridTrajectory b = run_grid(perturbed, proj, gp, conv);
    for (int t = 0; t < x.steps; ++t) {
        if (max_abs_diff(a.h1(v_star, t), b.h1(v_star, t)) > tol) return false;
    }
    return true;
}

GridFrontier GridFrontier::initial(int variates, int d_val, int d_key) {
    GridFrontier f;
    f.h1log.assign(static_cast<std::size_t>(variates), Mat(d_val, d_key, 0.0));
    f.h2log.assign(static_cast<std::size_t>(variates), Mat(d_val, d_key, 0.0));
    f.h1lin.assign(static_cast<std::size_t>(variates), Mat(d_val, d_key, 1.0));
    f.h2lin.assign(static_cast<std::size_t>(variates), Mat(d_val, d_key, 1.0));
    return f;
}

void advance_column(GridFrontier& f, const std::vector<Vec>& keys, const std::vector<Vec>& vals,
                    const std::vector<GateBundle>& gates, AnchorConvention conv) {
    const int variates = static_cast<int>(f.h1log.size());
    if (static_cast<int>(keys.size()) != variates || static_cast<int>(vals.size()) != variates ||
        static_cast<int>(gates.size()) != variates)
        throw std::invalid_argument("advance_column: one key/value/gate per variate required");

    const int d_val = f.h1log[0].rows;
    const int d_key = f.h1log[0].cols;
    const Mat ones(d_val, d_key, 1.0);
    const Mat zeros(d_val, d_key, 0.0);

    Vec r1(static_cast<std::size_t>(d_val)), r2(r1), rt1(r1), rt2(r1);
    Mat new1(d_val, d_key), new2(d_val, d_key);

    for (int v = 0; v < variates; ++v) {
        const GateBundle& g = gates[v];
        const Vec& key = keys[v];
        const Vec& val = vals[v];
        // Indices below v already hold the current column (this sweep);
        // index v still holds the previous column.
        const Mat& h1_prev_t = f.h1log[v];
        const Mat& h2_prev_t = f.h2log[v];
        const Mat& h1_prev_v = v == 0 ? zeros : f.h1log[v - 1];
        const Mat& h2_prev_v = v == 0 ? zeros : f.h2log[v - 1];
        const Mat& lin1_prev_v = v == 0 ? ones : f.h1lin[v - 1];
        const Mat& lin2_prev_v = v == 0 ? ones : f.h2lin[v - 1];

        auto residual = [&](const Mat& lin, Vec& r) {
            for (int a = 0; a < d_val; ++a) {
                double acc = 0.0;
                const double* row = lin.data.data() + static_cast<std::size_t>(a) * d_key;
                for (int b = 0; b < d_key; ++b) acc += row[b] * key[b];
                r[a] = acc - val[a];
            }
        };
        residual(f.h1lin[v], r1);
        residual(f.h2lin[v], r2);
        if (conv == AnchorConvention::PrevTimeBoth) {
            rt1 = r1;
            rt2 = r2;
        } else {
            residual(lin1_prev_v, rt1);
            residual(lin2_prev_v, rt2);
        }

        for (int a = 0; a < d_val; ++a) {
            const double c1 = g.eta * r1[a] + g.gamma * r2[a];
            const double c2 = g.lambda * rt1[a] + g.omega * rt2[a];
            const std::size_t off = static_cast<std::size_t>(a) * d_key;
            const double* p1t = h1_prev_t.data.data() + off;
            const double* p2t = h2_prev_t.data.data() + off;
            const double* p1v = h1_prev_v.data.data() + off;
            const double* p2v = h2_prev_v.data.data() + off;
            double* o1 = new1.data.data() + off;
            double* o2 = new2.data.data() + off;
            for (int b = 0; b < d_key; ++b) {
                o1[b] = g.alpha * p1t[b] + g.beta * p2t[b] - c1 * key[b];
                o2[b] = g.theta * p1v[b] + g.mu * p2v[b] - c2 * key[b];
            }
        }
        f.h1log[v] = new1;
        f.h2log[v] = new2;
        for (std::size_t i = 0; i < new1.data.size(); ++i) {
            f.h1lin[v].data[i] = std::exp(new1.data[i]);
            f.h2lin[v].data[i] = std::exp(new2.data[i]);
        }
    }
}

}  // namespace hydra
