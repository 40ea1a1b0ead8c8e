// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deliberately naive scalar-arithmetic reimplementation of the exact 1D and
// 2D recurrences, written directly from the update equations on plain nested
// vectors. It shares no computational code with the optimized kernels (no
// Mat/Vec routines, no fused loops) so the two paths can check each other.
// Test-only: sizes are capped to keep each case under a second.

#include <cstddef>
#include <utility>
#include <vector>

namespace hydra::oracle {

using Matrix = std::vector<std::vector<double>>;  // [d_val][d_key]

struct Gates2D {
    double alpha, beta, theta, mu;
    double eta, gamma, lambda, omega;
};

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxSteps = 64;
inline constexpr int kMaxVariates = 8;

/// States after each step of the gated log-domain recurrence.
std::vector<Matrix> run_1d(const Matrix& m0, const std::vector<std::vector<double>>& keys,
                           const std::vector<std::vector<double>>& vals,
                           const std::vector<std::pair<double, double>>& gates);

struct GridResult {
    // [v][t] log-domain states.
    std::vector<std::vector<Matrix>> head1;
    std::vector<std::vector<Matrix>> head2;
};

/// Exact dual-head grid recurrence. prev_time_both selects whether head-2's
/// gradients are taken at the previous-time states or the previous-variate
/// states.
GridResult run_2d(int variates, int steps, const std::vector<std::vector<std::vector<double>>>& keys,
                  const std::vector<std::vector<std::vector<double>>>& vals,
                  const std::vector<std::vector<Gates2D>>& gates, bool prev_time_both);

}  // namespace hydra::oracle
