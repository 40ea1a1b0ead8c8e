// SPDX-License-Identifier: Apache-2.0
#include "hydra/egd1d.hpp"

#include <stdexcept>

namespace hydra {

LogMemoryState LogMemoryState::initial(int d_val, int d_key) { return {Mat(d_val, d_key, 0.0)}; }

double loss(const LogMemoryState& state, const Vec& key, const Vec& value) {
    Vec pred = matvec(emap_exp(state.mlog), key);
    if (pred.size() != value.size()) throw std::invalid_argument("loss: value length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double r = pred[i] - value[i];
        acc += r * r;
    }
    return acc;
}

Mat grad(const Mat& m_linear, const Vec& key, const Vec& value) {
    Vec residual = matvec(m_linear, key);
    if (residual.size() != value.size()) throw std::invalid_argument("grad: value length mismatch");
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= value[i];
    return outer(residual, key);
}

LogMemoryState step(const LogMemoryState& state, const Vec& key, const Vec& value, double alpha,
                    double eta) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("step: alpha must lie in [0,1]");
    if (eta < 0.0) throw std::invalid_argument("step: eta must be nonnegative");
    Mat g = grad(emap_exp(state.mlog), key, value);
    LogMemoryState out = state;
    for (std::size_t i = 0; i < out.mlog.data.size(); ++i)
        out.mlog.data[i] = alpha * state.mlog.data[i] - eta * g.data[i];
    return out;
}

std::vector<LogMemoryState> run_sequence(const LogMemoryState& state0, const std::vector<Vec>& keys,
                                         const std::vector<Vec>& vals,
                                         const std::vector<Gate1D>& gates) {
    if (keys.size() != vals.size() || keys.size() != gates.size())
        throw std::invalid_argument("run_sequence: keys/vals/gates lengths differ");
    std::vector<LogMemoryState> out;
    out.reserve(keys.size());
    const LogMemoryState* prev = &state0;
    for (std::size_t t = 0; t < keys.size(); ++t) {
        out.push_back(step(*prev, keys[t], vals[t], gates[t].alpha, gates[t].eta));
        prev = &out.back();
    }
    return out;
}

Vec retrieve(const LogMemoryState& state, const Vec& query) {
    return matvec(emap_exp(state.mlog), query);
}

}  // namespace hydra
