// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hydra/mat.hpp"

namespace hydra {

/// Log-domain associative memory state. The linear memory exp(mlog) is
/// strictly positive by construction, which is what makes the multiplicative
/// update expressible as an additive one here.
struct LogMemoryState {
    Mat mlog;  // d_val x d_key

    static LogMemoryState initial(int d_val, int d_key);
};

/// Per-step 1D gates: retention in [0,1], rate >= 0.
struct Gate1D {
    double alpha = 1.0;
    double eta = 0.0;
};

/// Squared retrieval error || exp(mlog) * key - value ||_2^2.
double loss(const LogMemoryState& state, const Vec& key, const Vec& value);

/// (m_linear * key - value) key^T. This is the gradient of the half-squared
/// retrieval error with respect to the linear-domain memory; the update rule
/// uses it directly, with the conventional 1/2 absorbed into the rate gate.
Mat grad(const Mat& m_linear, const Vec& key, const Vec& value);

/// One gated log-domain update:
///   mlog' = alpha * mlog - eta * grad(exp(mlog), key, value).
/// alpha = 0 resets to the zero log-state, i.e. the all-ones linear memory.
LogMemoryState step(const LogMemoryState& state, const Vec& key, const Vec& value, double alpha,
                    double eta);

/// Exact sequential recurrence; returns the state after every step.
std::vector<LogMemoryState> run_sequence(const LogMemoryState& state0, const std::vector<Vec>& keys,
                                         const std::vector<Vec>& vals,
                                         const std::vector<Gate1D>& gates);

/// exp(mlog) * query.
Vec retrieve(const LogMemoryState& state, const Vec& query);

}  // namespace hydra
