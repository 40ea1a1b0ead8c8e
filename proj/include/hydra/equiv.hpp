// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hydra::equiv {

struct SuiteResult {
    std::string name;
    int trials = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Each suite draws `trials` random instances and reports the worst observed
/// deviation between two independently computed routes.
SuiteResult exact_1d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_dim);
SuiteResult chunk1_1d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_dim);
SuiteResult closed_form_1d(int trials, std::uint64_t seed, int max_chunk, int max_dim,
                           bool inject_fault = false);
SuiteResult exact_2d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_variates,
                               int max_dim);
SuiteResult chunk1_2d_vs_oracle(int trials, std::uint64_t seed, int max_steps, int max_variates,
                                int max_dim);
SuiteResult row_expansion_2d(int trials, std::uint64_t seed, int max_len, int max_dim,
                             bool inject_fault = false);
SuiteResult superposition_1d(int trials, std::uint64_t seed, int max_steps, int max_dim);
SuiteResult superposition_2d(int trials, std::uint64_t seed, int max_steps, int max_variates,
                             int max_dim);
SuiteResult reduction_1d(int trials, std::uint64_t seed, int max_steps, int max_dim);

struct EquivConfig {
    int trials = 100;
    std::uint64_t seed = 7;
    int max_steps = 64;
    int max_variates = 6;
    int max_dim = 8;
    /// Test-only mutation: flips one sign inside the closed-form evaluation
    /// so the harness's ability to catch regressions is itself checked.
    bool inject_fault = false;
    /// When positive, replaces every suite's tolerance.
    double tol_override = 0.0;
};

std::vector<SuiteResult> run_all(const EquivConfig& cfg);

bool all_passed(const std::vector<SuiteResult>& results);

std::string render_text(const std::vector<SuiteResult>& results);

}  // namespace hydra::equiv
