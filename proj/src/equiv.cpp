// SPDX-License-Identifier: Apache-2.0
#include "hydra/equiv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hydra/chunked1d.hpp"
#include "hydra/chunked2d.hpp"
#include "hydra/grid.hpp"
#include "hydra/rng.hpp"
#include "oracle.hpp"

namespace hydra::equiv {

namespace {

Vec random_vec(RngStream& rng, int n, double lo = -1.0, double hi = 1.0) {
    Vec v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

Mat random_mat(RngStream& rng, int rows, int cols, double lo, double hi) {
    Mat m(rows, cols);
    for (double& x : m.data) x = rng.uniform(lo, hi);
    return m;
}

struct Instance1D {
    LogMemoryState state0{Mat(1, 1)};
    std::vector<Vec> keys, vals;
    std::vector<Gate1D> gates;
    int d_key = 1, d_val = 1, steps = 1;
};

Instance1D random_instance_1d(RngStream& rng, int max_steps, int max_dim) {
    Instance1D inst;
    inst.steps = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_steps));
    inst.d_key = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_dim));
    inst.d_val = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_dim));
    inst.state0.mlog = random_mat(rng, inst.d_val, inst.d_key, -0.5, 0.5);
    for (int t = 0; t < inst.steps; ++t) {
        inst.keys.push_back(random_vec(rng, inst.d_key));
        inst.vals.push_back(random_vec(rng, inst.d_val));
        inst.gates.push_back(Gate1D{rng.uniform01(), rng.uniform(0.0, 0.2)});
    }
    return inst;
}

oracle::Matrix to_nested(const Mat& m) {
    oracle::Matrix out(static_cast<std::size_t>(m.rows),
                       std::vector<double>(static_cast<std::size_t>(m.cols)));
    for (int a = 0; a < m.rows; ++a)
        for (int b = 0; b < m.cols; ++b) out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = m(a, b);
    return out;
}

double diff_vs_nested(const Mat& m, const oracle::Matrix& n) {
    double worst = 0.0;
    for (int a = 0; a < m.rows; ++a)
        for (int b = 0; b < m.cols; ++b)
            worst = std::max(worst, std::fabs(m(a, b) - n[static_cast<std::size_t>(a)]
                                                         [static_cast<std::size_t>(b)]));
    return worst;
}

struct Instance2D {
    GridInputs in;
};

Instance2D random_instance_2d(RngStream& rng, int max_steps, int max_variates, int max_dim) {
    Instance2D inst;
    inst.in.steps = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_steps));
    inst.in.variates = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_variates));
    inst.in.d_key = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_dim));
    inst.in.d_val = inst.in.d_key;
    const std::size_t n = static_cast<std::size_t>(inst.in.steps) * inst.in.variates;
    inst.in.keys.resize(n);
    inst.in.vals.resize(n);
    inst.in.queries.resize(n);
    inst.in.gates.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        inst.in.keys[i] = random_vec(rng, inst.in.d_key);
        inst.in.vals[i] = random_vec(rng, inst.in.d_val);
        inst.in.queries[i] = random_vec(rng, inst.in.d_key);
        GateBundle g;
        g.alpha = rng.uniform01();
        g.beta = rng.uniform01();
        g.theta = rng.uniform01();
        g.mu = rng.uniform01();
        g.eta = rng.uniform(0.0, 0.2);
        g.gamma = rng.uniform(0.0, 0.2);
        g.lambda = rng.uniform(0.0, 0.2);
        g.omega = rng.uniform(0.0, 0.2);
        inst.in.gates[i] = g;
    }
    return inst;
}

struct OracleGrid {
    std::vector<std::vector<std::vector<double>>> keys, vals;
    std::vector<std::vector<oracle::Gates2D>> gates;
};

OracleGrid to_oracle_grid(const GridInputs& in) {
    OracleGrid og;
    og.keys.assign(static_cast<std::size_t>(in.variates), {});
    og.vals.assign(static_cast<std::size_t>(in.variates), {});
    og.gates.assign(static_cast<std::size_t>(in.variates), {});
    for (int v = 0; v < in.variates; ++v) {
        for (int t = 0; t < in.steps; ++t) {
            const std::size_t i = in.idx(v, t);
            og.keys[static_cast<std::size_t>(v)].push_back(in.keys[i]);
            og.vals[static_cast<std::size_t>(v)].push_back(in.vals[i]);
            const GateBundle& g = in.gates[i];
            og.gates[static_cast<std::size_t>(v)].push_back(
                oracle::Gates2D{g.alpha, g.beta, g.theta, g.mu, g.eta, g.gamma, g.lambda, g.omega});
        }
    }
    return og;
}

SuiteResult make_result(std::string name, int trials, double worst, double tol) {
    return SuiteResult{std::move(name), trials, worst, tol, worst <= tol};
}

}  // namespace

SuiteResult exact_1d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_dim) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance1D inst = random_instance_1d(rng, max_steps, max_dim);
        auto states = run_sequence(inst.state0, inst.keys, inst.vals, inst.gates);
        std::vector<std::vector<double>> okeys(inst.keys.begin(), inst.keys.end());
        std::vector<std::vector<double>> ovals(inst.vals.begin(), inst.vals.end());
        std::vector<std::pair<double, double>> ogates;
        for (const Gate1D& g : inst.gates) ogates.emplace_back(g.alpha, g.eta);
        auto oracle_states = oracle::run_1d(to_nested(inst.state0.mlog), okeys, ovals, ogates);
        for (std::size_t t = 0; t < states.size(); ++t)
            worst = std::max(worst, diff_vs_nested(states[t].mlog, oracle_states[t]));
    }
    return make_result("1d exact vs oracle", trials, worst, 1e-12);
}

SuiteResult chunk1_1d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_dim) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance1D inst = random_instance_1d(rng, max_steps, max_dim);
        auto states = run_chunked(inst.state0, inst.keys, inst.vals, inst.gates, ChunkSpec1D{1});
        std::vector<std::vector<double>> okeys(inst.keys.begin(), inst.keys.end());
        std::vector<std::vector<double>> ovals(inst.vals.begin(), inst.vals.end());
        std::vector<std::pair<double, double>> ogates;
        for (const Gate1D& g : inst.gates) ogates.emplace_back(g.alpha, g.eta);
        auto oracle_states = oracle::run_1d(to_nested(inst.state0.mlog), okeys, ovals, ogates);
        for (std::size_t t = 0; t < states.size(); ++t)
            worst = std::max(worst, diff_vs_nested(states[t].mlog, oracle_states[t]));
    }
    return make_result("1d chunk-size-1 vs oracle", trials, worst, 1e-12);
}

SuiteResult closed_form_1d(int trials, std::uint64_t seed, int max_chunk, int max_dim,
                           bool inject_fault) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance1D inst = random_instance_1d(rng, 4 * max_chunk, max_dim);
        const int b = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_chunk));
        auto loop_states = run_chunked(inst.state0, inst.keys, inst.vals, inst.gates, ChunkSpec1D{b});
        std::vector<Gate1D> gates = inst.gates;
        if (inject_fault) gates[0].eta = -gates[0].eta;  // deliberate sign regression
        auto closed_states =
            run_chunked_closed_form(inst.state0, inst.keys, inst.vals, gates, ChunkSpec1D{b});
        for (std::size_t t = 0; t < loop_states.size(); ++t)
            worst = std::max(worst, max_abs_diff(loop_states[t].mlog, closed_states[t].mlog));
    }
    return make_result("1d closed form vs loop form", trials, worst, 1e-10);
}

SuiteResult exact_2d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_variates,
                               int max_dim) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance2D inst = random_instance_2d(rng, max_steps, max_variates, max_dim);
        for (AnchorConvention conv :
             {AnchorConvention::PrevTimeBoth, AnchorConvention::PerHeadPredecessor}) {
            GridTrajectory traj = run_grid(inst.in, conv);
            OracleGrid og = to_oracle_grid(inst.in);
            auto ref = oracle::run_2d(inst.in.variates, inst.in.steps, og.keys, og.vals, og.gates,
                                      conv == AnchorConvention::PrevTimeBoth);
            for (int v = 0; v < inst.in.variates; ++v)
                for (int t = 0; t < inst.in.steps; ++t) {
                    worst = std::max(worst, diff_vs_nested(traj.h1(v, t),
                                                           ref.head1[static_cast<std::size_t>(v)]
                                                                    [static_cast<std::size_t>(t)]));
                    worst = std::max(worst, diff_vs_nested(traj.h2(v, t),
                                                           ref.head2[static_cast<std::size_t>(v)]
                                                                    [static_cast<std::size_t>(t)]));
                }
        }
    }
    return make_result("2d exact vs oracle (both conventions)", trials, worst, 1e-12);
}

SuiteResult chunk1_2d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_variates,
                                int max_dim) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance2D inst = random_instance_2d(rng, max_steps, max_variates, max_dim);
        GridTrajectory traj = run_grid_chunked(inst.in, ChunkSpec2D{1, 1});
        OracleGrid og = to_oracle_grid(inst.in);
        auto ref = oracle::run_2d(inst.in.variates, inst.in.steps, og.keys, og.vals, og.gates,
                                  /*prev_time_both=*/false);
        for (int v = 0; v < inst.in.variates; ++v)
            for (int t = 0; t < inst.in.steps; ++t) {
                worst = std::max(worst, diff_vs_nested(traj.h1(v, t),
                                                       ref.head1[static_cast<std::size_t>(v)]
                                                                [static_cast<std::size_t>(t)]));
                worst = std::max(worst, diff_vs_nested(traj.h2(v, t),
                                                       ref.head2[static_cast<std::size_t>(v)]
                                                                [static_cast<std::size_t>(t)]));
            }
    }
    return make_result("2d chunk-size-1 vs oracle", trials, worst, 1e-12);
}

SuiteResult row_expansion_2d(int trials, std::uint64_t seed, int max_len, int max_dim,
                             bool inject_fault) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        const int len = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_len));
        const int d = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_dim));
        RowChunkInputs row;
        row.m1_entry = random_mat(rng, d, d, -0.5, 0.5);
        row.m2_entry = random_mat(rng, d, d, -0.5, 0.5);
        for (int t = 0; t < len; ++t) {
            row.alpha.push_back(rng.uniform01());
            row.beta.push_back(rng.uniform01());
            row.eta.push_back(rng.uniform(0.0, 0.2));
            row.gamma.push_back(rng.uniform(0.0, 0.2));
            row.g1.push_back(random_mat(rng, d, d, -1.0, 1.0));
            row.g2.push_back(random_mat(rng, d, d, -1.0, 1.0));
        }
        Mat loop = expand_chunk_row_loop(row);
        if (inject_fault) row.gamma[0] = -row.gamma[0];
        Mat closed = expand_chunk_closed_form(row);
        worst = std::max(worst, max_abs_diff(loop, closed));
    }
    return make_result("2d row expansion closed vs loop", trials, worst, 1e-10);
}

SuiteResult superposition_1d(int trials, std::uint64_t seed, int max_steps, int max_dim) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance1D inst = random_instance_1d(rng, max_steps, max_dim);
        const ChunkSpec1D full{inst.steps};  // one chunk: anchors stay frozen at state0
        std::vector<Vec> vals_b(inst.vals.size()), vals_sum(inst.vals.size()),
            vals_zero(inst.vals.size());
        for (std::size_t t = 0; t < inst.vals.size(); ++t) {
            vals_b[t] = random_vec(rng, inst.d_val);
            vals_sum[t].resize(inst.vals[t].size());
            for (std::size_t i = 0; i < inst.vals[t].size(); ++i)
                vals_sum[t][i] = inst.vals[t][i] + vals_b[t][i];
            vals_zero[t].assign(inst.vals[t].size(), 0.0);
        }
        auto final_state = [&](const std::vector<Vec>& vals) {
            return run_chunked(inst.state0, inst.keys, vals, inst.gates, full).back().mlog;
        };
        const Mat s0 = final_state(vals_zero);
        const Mat sa = final_state(inst.vals);
        const Mat sb = final_state(vals_b);
        const Mat sab = final_state(vals_sum);
        // Affinity in the gradient inputs: delta(a+b) == delta(a) + delta(b).
        double local = 0.0;
        for (std::size_t i = 0; i < s0.data.size(); ++i) {
            double lhs = sab.data[i] - s0.data[i];
            double rhs = (sa.data[i] - s0.data[i]) + (sb.data[i] - s0.data[i]);
            local = std::max(local, std::fabs(lhs - rhs));
        }
        worst = std::max(worst, local);
    }
    return make_result("1d superposition (full-sequence chunk)", trials, worst, 1e-10);
}

SuiteResult superposition_2d(int trials, std::uint64_t seed, int max_steps, int max_variates,
                             int max_dim) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance2D inst = random_instance_2d(rng, max_steps, max_variates, max_dim);
        const ChunkSpec2D full{inst.in.steps, inst.in.variates};
        GridInputs in_b = inst.in, in_sum = inst.in, in_zero = inst.in;
        for (std::size_t i = 0; i < inst.in.vals.size(); ++i) {
            in_b.vals[i] = random_vec(rng, inst.in.d_val);
            for (std::size_t e = 0; e < in_sum.vals[i].size(); ++e)
                in_sum.vals[i][e] = inst.in.vals[i][e] + in_b.vals[i][e];
            in_zero.vals[i].assign(in_zero.vals[i].size(), 0.0);
        }
        auto final_states = [&](const GridInputs& in) { return run_grid_chunked(in, full); };
        const GridTrajectory s0 = final_states(in_zero);
        const GridTrajectory sa = final_states(inst.in);
        const GridTrajectory sb = final_states(in_b);
        const GridTrajectory sab = final_states(in_sum);
        double local = 0.0;
        for (std::size_t c = 0; c < s0.head1.size(); ++c) {
            for (std::size_t i = 0; i < s0.head1[c].data.size(); ++i) {
                double lhs = sab.head1[c].data[i] - s0.head1[c].data[i];
                double rhs = (sa.head1[c].data[i] - s0.head1[c].data[i]) +
                             (sb.head1[c].data[i] - s0.head1[c].data[i]);
                local = std::max(local, std::fabs(lhs - rhs));
                lhs = sab.head2[c].data[i] - s0.head2[c].data[i];
                rhs = (sa.head2[c].data[i] - s0.head2[c].data[i]) +
                      (sb.head2[c].data[i] - s0.head2[c].data[i]);
                local = std::max(local, std::fabs(lhs - rhs));
            }
        }
        worst = std::max(worst, local);
    }
    return make_result("2d superposition (single chunk)", trials, worst, 1e-10);
}

SuiteResult reduction_1d(int trials, std::uint64_t seed, int max_steps, int max_dim) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Instance2D inst = random_instance_2d(rng, max_steps, 1, max_dim);
        std::vector<Gate1D> gates_1d;
        for (std::size_t i = 0; i < inst.in.gates.size(); ++i) {
            GateBundle& g = inst.in.gates[i];
            g.beta = g.gamma = g.theta = g.lambda = g.mu = g.omega = 0.0;
            gates_1d.push_back(Gate1D{g.alpha, g.eta});
        }
        GridTrajectory traj = run_grid(inst.in, AnchorConvention::PrevTimeBoth);
        LogMemoryState state0 = LogMemoryState::initial(inst.in.d_val, inst.in.d_key);
        auto seq = run_sequence(state0, inst.in.keys, inst.in.vals, gates_1d);
        for (int t = 0; t < inst.in.steps; ++t)
            worst = std::max(worst, max_abs_diff(traj.h1(0, t), seq[static_cast<std::size_t>(t)].mlog));
    }
    return make_result("1d reduction (V=1, cross gates zero)", trials, worst, 1e-12);
}

std::vector<SuiteResult> run_all(const EquivConfig& cfg) {
    std::vector<SuiteResult> out;
    const int t2d = std::max(1, cfg.trials / 2);
    out.push_back(exact_1d_vs_oracle(cfg.trials, cfg.seed, cfg.max_steps, cfg.max_dim));
    out.push_back(chunk1_1d_vs_oracle(cfg.trials, cfg.seed + 1, cfg.max_steps, cfg.max_dim));
    out.push_back(closed_form_1d(cfg.trials, cfg.seed + 2, 16, cfg.max_dim, cfg.inject_fault));
    out.push_back(exact_2d_vs_oracle(t2d, cfg.seed + 3, std::min(cfg.max_steps, 32),
                                     cfg.max_variates, std::min(cfg.max_dim, 4)));
    out.push_back(chunk1_2d_vs_oracle(t2d, cfg.seed + 4, std::min(cfg.max_steps, 32),
                                      cfg.max_variates, std::min(cfg.max_dim, 4)));
    out.push_back(row_expansion_2d(cfg.trials, cfg.seed + 5, 16, cfg.max_dim, cfg.inject_fault));
    out.push_back(superposition_1d(cfg.trials, cfg.seed + 6, cfg.max_steps, cfg.max_dim));
    out.push_back(superposition_2d(t2d, cfg.seed + 7, std::min(cfg.max_steps, 32),
                                   cfg.max_variates, std::min(cfg.max_dim, 4)));
    out.push_back(reduction_1d(cfg.trials, cfg.seed + 8, cfg.max_steps, cfg.max_dim));
    if (cfg.tol_override > 0.0) {
        for (SuiteResult& r : out) {
            r.tolerance = cfg.tol_override;
            r.passed = r.max_deviation <= r.tolerance;
        }
    }
    return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const SuiteResult& r) { return r.passed; });
}

std::string render_text(const std::vector<SuiteResult>& results) {
    std::ostringstream out;
    char line[160];
    for (const SuiteResult& r : results) {
        std::snprintf(line, sizeof(line), "  %-40s trials=%-4d max_dev=%.3e tol=%.0e  %s\n",
                      r.name.c_str(), r.trials, r.max_deviation, r.tolerance,
                      r.passed ? "pass" : "FAIL");
        out << line;
    }
    return out.str();
}

}  // namespace hydra::equiv
