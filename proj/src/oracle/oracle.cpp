// SPDX-License-Identifier: Apache-2.0
#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace hydra::oracle {

namespace {

void check_caps(int d_val, int d_key, int steps, int variates) {
    if (d_val > kMaxDim || d_key > kMaxDim || steps > kMaxSteps || variates > kMaxVariates)
        throw std::invalid_argument("oracle: size cap exceeded");
}

// gradient[a][b] = (sum_c exp(mlog[a][c]) * key[c] - val[a]) * key[b]
Matrix gradient_at(const Matrix& mlog, const std::vector<double>& key,
                   const std::vector<double>& val) {
    const std::size_t d_val = mlog.size();
    const std::size_t d_key = mlog[0].size();
    Matrix g(d_val, std::vector<double>(d_key, 0.0));
    for (std::size_t a = 0; a < d_val; ++a) {
        double pred = 0.0;
        for (std::size_t c = 0; c < d_key; ++c) pred += std::exp(mlog[a][c]) * key[c];
        const double residual = pred - val[a];
        for (std::size_t b = 0; b < d_key; ++b) g[a][b] = residual * key[b];
    }
    return g;
}

}  // namespace

std::vector<Matrix> run_1d(const Matrix& m0, const std::vector<std::vector<double>>& keys,
                           const std::vector<std::vector<double>>& vals,
                           const std::vector<std::pair<double, double>>& gates) {
    if (m0.empty() || m0[0].empty()) throw std::invalid_argument("oracle: empty state");
    if (keys.size() != vals.size() || keys.size() != gates.size())
        throw std::invalid_argument("oracle: input lengths differ");
    check_caps(static_cast<int>(m0.size()), static_cast<int>(m0[0].size()),
               static_cast<int>(keys.size()), 1);

    std::vector<Matrix> out;
    Matrix state = m0;
    for (std::size_t t = 0; t < keys.size(); ++t) {
        const double alpha = gates[t].first;
        const double eta = gates[t].second;
        const Matrix g = gradient_at(state, keys[t], vals[t]);
        for (std::size_t a = 0; a < state.size(); ++a)
            for (std::size_t b = 0; b < state[a].size(); ++b)
                state[a][b] = alpha * state[a][b] - eta * g[a][b];
        out.push_back(state);
    }
    return out;
}

GridResult run_2d(int variates, int steps,
                  const std::vector<std::vector<std::vector<double>>>& keys,
                  const std::vector<std::vector<std::vector<double>>>& vals,
                  const std::vector<std::vector<Gates2D>>& gates, bool prev_time_both) {
    if (variates < 1 || steps < 1) throw std::invalid_argument("oracle: empty grid");
    const std::size_t d_key = keys[0][0].size();
    const std::size_t d_val = vals[0][0].size();
    check_caps(static_cast<int>(d_val), static_cast<int>(d_key), steps, variates);

    const Matrix zero(d_val, std::vector<double>(d_key, 0.0));
    GridResult res;
    res.head1.assign(variates, std::vector<Matrix>(steps));
    res.head2.assign(variates, std::vector<Matrix>(steps));

    auto state1 = [&](int v, int t) -> const Matrix& {
        return (v < 0 || t < 0) ? zero : res.head1[v][t];
    };
    auto state2 = [&](int v, int t) -> const Matrix& {
        return (v < 0 || t < 0) ? zero : res.head2[v][t];
    };

    for (int v = 0; v < variates; ++v) {
        for (int t = 0; t < steps; ++t) {
            const Gates2D& g = gates[v][t];
            const std::vector<double>& key = keys[v][t];
            const std::vector<double>& val = vals[v][t];
            const Matrix g1 = gradient_at(state1(v, t - 1), key, val);
            const Matrix g2 = gradient_at(state2(v, t - 1), key, val);
            const Matrix gt1 = prev_time_both ? g1 : gradient_at(state1(v - 1, t), key, val);
            const Matrix gt2 = prev_time_both ? g2 : gradient_at(state2(v - 1, t), key, val);

            Matrix new1(d_val, std::vector<double>(d_key, 0.0));
            Matrix new2(d_val, std::vector<double>(d_key, 0.0));
            for (std::size_t a = 0; a < d_val; ++a) {
                for (std::size_t b = 0; b < d_key; ++b) {
                    new1[a][b] = g.alpha * state1(v, t - 1)[a][b] - g.eta * g1[a][b] +
                                 g.beta * state2(v, t - 1)[a][b] - g.gamma * g2[a][b];
                    new2[a][b] = g.theta * state1(v - 1, t)[a][b] - g.lambda * gt1[a][b] +
                                 g.mu * state2(v - 1, t)[a][b] - g.omega * gt2[a][b];
                }
            }
            res.head1[v][t] = new1;
            res.head2[v][t] = new2;
        }
    }
    return res;
}

}  // namespace hydra::oracle
