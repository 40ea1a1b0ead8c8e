// SPDX-License-Identifier: Apache-2.0
#include "hydra/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hydra/rng.hpp"

namespace hydra::bench {

StreamInputs random_inputs(int variates, int steps, int dim, std::uint64_t seed) {
    StreamInputs in;
    in.variates = variates;
    in.steps = steps;
    in.d_key = dim;
    in.d_val = dim;
    in.keys.resize(static_cast<std::size_t>(variates) * steps);
    in.vals.resize(in.keys.size());
    RngStream rng(seed);
    for (auto& k : in.keys) {
        k.resize(static_cast<std::size_t>(dim));
        for (double& x : k) x = rng.uniform(-1.0, 1.0);
    }
    for (auto& v : in.vals) {
        v.resize(static_cast<std::size_t>(dim));
        for (double& x : v) x = rng.uniform(-1.0, 1.0);
    }
    // Contractive retention with small rates keeps log states bounded over
    // thousands of steps of random data.
    in.gates = GateBundle{0.90, 0.05, 0.45, 0.50, 1e-3, 1e-3, 1e-3, 1e-3};
    return in;
}

GridFrontier run_exact_stream(const StreamInputs& in) {
    GridFrontier f = GridFrontier::initial(in.variates, in.d_val, in.d_key);
    std::vector<Vec> keys(static_cast<std::size_t>(in.variates)), vals(keys);
    std::vector<GateBundle> gates(static_cast<std::size_t>(in.variates), in.gates);
    for (int t = 0; t < in.steps; ++t) {
        for (int v = 0; v < in.variates; ++v) {
            keys[static_cast<std::size_t>(v)] = in.keys[in.idx(v, t)];
            vals[static_cast<std::size_t>(v)] = in.vals[in.idx(v, t)];
        }
        advance_column(f, keys, vals, gates, AnchorConvention::PerHeadPredecessor);
    }
    return f;
}

namespace {

// residual[cell][a] = (anchor * key)[a] - val[a] for every cell of the chunk,
// evaluated as one pass per anchor row to keep the inner loops contiguous.
void chunk_residuals(const StreamInputs& in, const Mat& anchor, int t0, int t1,
                     std::vector<Vec>& out) {
    const int cells = (t1 - t0) * in.variates;
    out.resize(static_cast<std::size_t>(cells));
    int c = 0;
    for (int t = t0; t < t1; ++t) {
        for (int v = 0; v < in.variates; ++v, ++c) {
            const Vec& key = in.keys[in.idx(v, t)];
            const Vec& val = in.vals[in.idx(v, t)];
            Vec& r = out[static_cast<std::size_t>(c)];
            r.resize(static_cast<std::size_t>(in.d_val));
            for (int a = 0; a < in.d_val; ++a) {
                const double* row = anchor.data.data() + static_cast<std::size_t>(a) * in.d_key;
                double acc = 0.0;
                for (int b = 0; b < in.d_key; ++b) acc += row[b] * key[b];
                r[static_cast<std::size_t>(a)] = acc - val[a];
            }
        }
    }
}

}  // namespace

GridFrontier run_chunked_stream(const StreamInputs& in, int time_chunk) {
    if (time_chunk < 1 || time_chunk > in.steps)
        throw std::invalid_argument("run_chunked_stream: need 1 <= time_chunk <= steps");
    GridFrontier f = GridFrontier::initial(in.variates, in.d_val, in.d_key);
    const GateBundle& g = in.gates;
    const Mat ones(in.d_val, in.d_key, 1.0);
    const Mat zeros(in.d_val, in.d_key, 0.0);

    std::vector<Vec> ru1, ru2, rp1, rp2;
    Mat new1(in.d_val, in.d_key), new2(in.d_val, in.d_key);

    for (int t0 = 0; t0 < in.steps; t0 += time_chunk) {
        const int t1 = std::min(t0 + time_chunk, in.steps);
        // Corner anchors: the previous chunk's last-column top-variate states
        // for the time anchor, and the initial state for the variate anchor
        // (the variate corner sits outside the grid when b_v = V).
        const Mat time_anchor1 =
            t0 == 0 ? ones : emap_exp(f.h1log[static_cast<std::size_t>(in.variates - 1)]);
        const Mat time_anchor2 =
            t0 == 0 ? ones : emap_exp(f.h2log[static_cast<std::size_t>(in.variates - 1)]);

        chunk_residuals(in, time_anchor1, t0, t1, ru1);
        chunk_residuals(in, time_anchor2, t0, t1, ru2);
        chunk_residuals(in, ones, t0, t1, rp1);
        rp2 = rp1;  // both variate anchors are the same initial state

        int c = 0;
        for (int t = t0; t < t1; ++t) {
            for (int v = 0; v < in.variates; ++v, ++c) {
                const Vec& key = in.keys[in.idx(v, t)];
                const Mat& h1_prev_t = f.h1log[static_cast<std::size_t>(v)];
                const Mat& h2_prev_t = f.h2log[static_cast<std::size_t>(v)];
                const Mat& h1_prev_v = v == 0 ? zeros : f.h1log[static_cast<std::size_t>(v - 1)];
                const Mat& h2_prev_v = v == 0 ? zeros : f.h2log[static_cast<std::size_t>(v - 1)];
                const Vec& r1 = ru1[static_cast<std::size_t>(c)];
                const Vec& r2 = ru2[static_cast<std::size_t>(c)];
                const Vec& q1 = rp1[static_cast<std::size_t>(c)];
                const Vec& q2 = rp2[static_cast<std::size_t>(c)];
                for (int a = 0; a < in.d_val; ++a) {
                    const double c1 = g.eta * r1[static_cast<std::size_t>(a)] +
                                      g.gamma * r2[static_cast<std::size_t>(a)];
                    const double c2 = g.lambda * q1[static_cast<std::size_t>(a)] +
                                      g.omega * q2[static_cast<std::size_t>(a)];
                    const std::size_t off = static_cast<std::size_t>(a) * in.d_key;
                    const double* p1t = h1_prev_t.data.data() + off;
                    const double* p2t = h2_prev_t.data.data() + off;
                    const double* p1v = h1_prev_v.data.data() + off;
                    const double* p2v = h2_prev_v.data.data() + off;
                    double* o1 = new1.data.data() + off;
                    double* o2 = new2.data.data() + off;
                    for (int b = 0; b < in.d_key; ++b) {
                        o1[b] = g.alpha * p1t[b] + g.beta * p2t[b] - c1 * key[b];
                        o2[b] = g.theta * p1v[b] + g.mu * p2v[b] - c2 * key[b];
                    }
                }
                f.h1log[static_cast<std::size_t>(v)] = new1;
                f.h2log[static_cast<std::size_t>(v)] = new2;
            }
        }
    }
    // Materialize the linear states of the final column for callers.
    for (int v = 0; v < in.variates; ++v) {
        f.h1lin[static_cast<std::size_t>(v)] = emap_exp(f.h1log[static_cast<std::size_t>(v)]);
        f.h2lin[static_cast<std::size_t>(v)] = emap_exp(f.h2log[static_cast<std::size_t>(v)]);
    }
    return f;
}

namespace {

double frontier_checksum(const GridFrontier& f) {
    double acc = 0.0;
    for (const Mat& m : f.h1log)
        for (double x : m.data) acc += x;
    for (const Mat& m : f.h2log)
        for (double x : m.data) acc += x;
    return acc;
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

BenchResult run(const BenchConfig& cfg) {
    if (cfg.reps < 1) throw std::invalid_argument("bench: reps must be >= 1");
    const StreamInputs in = random_inputs(cfg.variates, cfg.steps, cfg.dim, cfg.seed);
    BenchResult r;

    using clock = std::chrono::steady_clock;
    auto time_one = [](auto&& fn) {
        const auto start = clock::now();
        fn();
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    };

    // One warmup each, then timed repetitions.
    r.exact_checksum = frontier_checksum(run_exact_stream(in));
    r.chunked_checksum = frontier_checksum(run_chunked_stream(in, cfg.time_chunk));
    for (int rep = 0; rep < cfg.reps; ++rep) {
        r.exact_ms.push_back(time_one([&] { run_exact_stream(in); }));
        r.chunked_ms.push_back(time_one([&] { run_chunked_stream(in, cfg.time_chunk); }));
    }
    r.exact_median_ms = median(r.exact_ms);
    r.chunked_median_ms = median(r.chunked_ms);
    r.speedup = r.exact_median_ms / r.chunked_median_ms;
    return r;
}

std::string render_text(const BenchConfig& cfg, const BenchResult& r) {
    std::ostringstream out;
    char line[200];
    std::snprintf(line, sizeof(line),
                  "throughput: T=%d V=%d d=%d chunk_t=%d reps=%d seed=%llu\n", cfg.steps,
                  cfg.variates, cfg.dim, cfg.time_chunk, cfg.reps,
                  static_cast<unsigned long long>(cfg.seed));
    out << line;
    std::snprintf(line, sizeof(line), "  exact   median %10.2f ms  (final-state checksum %.6g)\n",
                  r.exact_median_ms, r.exact_checksum);
    out << line;
    std::snprintf(line, sizeof(line), "  chunked median %10.2f ms  (final-state checksum %.6g)\n",
                  r.chunked_median_ms, r.chunked_checksum);
    out << line;
    std::snprintf(line, sizeof(line), "  speedup %.2fx\n", r.speedup);
    out << line;
    return out.str();
}

std::string render_csv(const BenchConfig& cfg, const BenchResult& r) {
    std::ostringstream out;
    out << "steps,variates,dim,time_chunk,reps,exact_median_ms,chunked_median_ms,speedup\n";
    char line[200];
    std::snprintf(line, sizeof(line), "%d,%d,%d,%d,%d,%.4f,%.4f,%.4f\n", cfg.steps, cfg.variates,
                  cfg.dim, cfg.time_chunk, cfg.reps, r.exact_median_ms, r.chunked_median_ms,
                  r.speedup);
    out << line;
    return out.str();
}

}  // namespace hydra::bench
