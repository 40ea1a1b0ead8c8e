// SPDX-License-Identifier: Apache-2.0
#include "hydra/chunked1d.hpp"

#include <stdexcept>

namespace hydra {

namespace {

void check_inputs(const std::vector<Vec>& keys, const std::vector<Vec>& vals,
                  const std::vector<Gate1D>& gates, const ChunkSpec1D& spec) {
    if (keys.size() != vals.size() || keys.size() != gates.size())
        throw std::invalid_argument("run_chunked: keys/vals/gates lengths differ");
    if (spec.chunk_len < 1) throw std::invalid_argument("run_chunked: chunk_len must be >= 1");
}

}  // namespace

std::vector<LogMemoryState> run_chunked(const LogMemoryState& state0, const std::vector<Vec>& keys,
                                        const std::vector<Vec>& vals,
                                        const std::vector<Gate1D>& gates, const ChunkSpec1D& spec) {
    check_inputs(keys, vals, gates, spec);
    const int total = static_cast<int>(keys.size());
    std::vector<LogMemoryState> out;
    out.reserve(keys.size());

    LogMemoryState anchor = state0;  // last state of the previous chunk
    for (int begin = 0; begin < total; begin += spec.chunk_len) {
        const int end = std::min(begin + spec.chunk_len, total);
        const Mat anchor_linear = emap_exp(anchor.mlog);

        // All anchored gradients for this chunk are independent of each other.
        std::vector<Mat> u;
        u.reserve(static_cast<std::size_t>(end - begin));
        for (int t = begin; t < end; ++t) u.push_back(grad(anchor_linear, keys[t], vals[t]));

        const Mat* prev = begin == 0 ? &state0.mlog : &out.back().mlog;
        for (int t = begin; t < end; ++t) {
            LogMemoryState next{Mat(prev->rows, prev->cols)};
            const Mat& g = u[static_cast<std::size_t>(t - begin)];
            for (std::size_t i = 0; i < next.mlog.data.size(); ++i)
                next.mlog.data[i] = gates[t].alpha * prev->data[i] - gates[t].eta * g.data[i];
            out.push_back(std::move(next));
            prev = &out.back().mlog;
        }
        anchor = out.back();
    }
    return out;
}

std::vector<LogMemoryState> run_chunked_closed_form(const LogMemoryState& state0,
                                                    const std::vector<Vec>& keys,
                                                    const std::vector<Vec>& vals,
                                                    const std::vector<Gate1D>& gates,
                                                    const ChunkSpec1D& spec) {
    check_inputs(keys, vals, gates, spec);
    const int total = static_cast<int>(keys.size());
    std::vector<LogMemoryState> out;
    out.reserve(keys.size());

    LogMemoryState entry = state0;  // state at the chunk boundary
    for (int begin = 0; begin < total; begin += spec.chunk_len) {
        const int end = std::min(begin + spec.chunk_len, total);
        const int len = end - begin;
        const Mat anchor_linear = emap_exp(entry.mlog);

        std::vector<Mat> u;
        u.reserve(static_cast<std::size_t>(len));
        std::vector<double> alphas(static_cast<std::size_t>(len));
        for (int t = begin; t < end; ++t) {
            u.push_back(grad(anchor_linear, keys[t], vals[t]));
            alphas[static_cast<std::size_t>(t - begin)] = gates[t].alpha;
        }

        for (int j = 0; j < len; ++j) {
            // Decay coefficients for positions 1..j+1 of the chunk.
            std::vector<double> head(alphas.begin(), alphas.begin() + j + 1);
            std::vector<double> decay = suffix_products(head);
            const double entry_decay = head[0] * decay[0];

            LogMemoryState state{Mat(entry.mlog.rows, entry.mlog.cols)};
            for (std::size_t e = 0; e < state.mlog.data.size(); ++e) {
                double acc = entry_decay * entry.mlog.data[e];
                for (int i = 0; i <= j; ++i)
                    acc -= decay[static_cast<std::size_t>(i)] * gates[begin + i].eta *
                           u[static_cast<std::size_t>(i)].data[e];
                state.mlog.data[e] = acc;
            }
            out.push_back(std::move(state));
        }
        entry = out.back();
    }
    return out;
}

double approximation_gap(const std::vector<Vec>& keys, const std::vector<Vec>& vals,
                         const std::vector<Gate1D>& gates, int chunk_len) {
    if (keys.empty()) throw std::invalid_argument("approximation_gap: empty sequence");
    const int d_val = static_cast<int>(vals.front().size());
    const int d_key = static_cast<int>(keys.front().size());
    LogMemoryState state0 = LogMemoryState::initial(d_val, d_key);
    auto exact = run_sequence(state0, keys, vals, gates);
    auto approx = run_chunked(state0, keys, vals, gates, ChunkSpec1D{chunk_len});
    double worst = 0.0;
    for (std::size_t t = 0; t < exact.size(); ++t) {
        double d = max_abs_diff(exact[t].mlog, approx[t].mlog);
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace hydra
