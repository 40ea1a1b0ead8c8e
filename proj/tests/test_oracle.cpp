// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "oracle.hpp"

namespace oracle = hydra::oracle;

TEST_CASE("oracle single-cell hand arithmetic") {
    // one 1x1 cell, all-ones memory, key 1, value 2, golden gates
    const oracle::Gates2D g{0.5, 0.5, 0.5, 0.5, 0.01, 0.01, 0.01, 0.01};
    const auto res = oracle::run_2d(1, 1, {{{1.0}}}, {{{2.0}}}, {{g}}, true);
    CHECK(res.head1[0][0][0][0] == 0.5 * 0.0 - 0.01 * (-1.0) + 0.5 * 0.0 - 0.01 * (-1.0));
    CHECK(res.head2[0][0][0][0] == 0.02);
}

TEST_CASE("oracle reproduces the golden grid") {
    const oracle::Gates2D g{0.5, 0.5, 0.5, 0.5, 0.01, 0.01, 0.01, 0.01};
    std::vector<std::vector<std::vector<double>>> keys(3), vals(3);
    std::vector<std::vector<oracle::Gates2D>> gates(3);
    for (int v = 0; v < 3; ++v) {
        for (int t = 0; t < 6; ++t) {
            const double x = v + t + 1;
            keys[static_cast<std::size_t>(v)].push_back({x});
            vals[static_cast<std::size_t>(v)].push_back({2.0 * x});
            gates[static_cast<std::size_t>(v)].push_back(g);
        }
    }
    const auto res = oracle::run_2d(3, 6, keys, vals, gates, true);
    static const double expected_h1[3][6] = {
        {1.020, 1.103, 1.286, 1.574, 1.890, 2.100},
        {1.083, 1.288, 1.617, 1.949, 2.058, 2.077},
        {1.197, 1.590, 1.957, 2.026, 2.020, 2.023}};
    static const double expected_h2[3][6] = {
        {1.020, 1.082, 1.177, 1.279, 1.332, 1.323},
        {1.105, 1.286, 1.546, 1.749, 1.769, 1.814},
        {1.310, 1.634, 1.919, 1.930, 1.949, 1.979}};
    for (int v = 0; v < 3; ++v)
        for (int t = 0; t < 6; ++t) {
            CHECK(std::fabs(std::exp(res.head1[v][t][0][0]) - expected_h1[v][t]) <= 5e-3);
            CHECK(std::fabs(std::exp(res.head2[v][t][0][0]) - expected_h2[v][t]) <= 5e-3);
        }
}

TEST_CASE("oracle 1d single step") {
    const oracle::Matrix m0{{0.0}};
    const auto states = oracle::run_1d(m0, {{1.0}}, {{2.0}}, {{1.0, 0.02}});
    CHECK(states[0][0][0] == doctest::Approx(0.02).epsilon(1e-15));
}

TEST_CASE("oracle enforces its size caps") {
    const oracle::Matrix m0{{0.0}};
    std::vector<std::vector<double>> keys(100, {1.0}), vals(100, {1.0});
    std::vector<std::pair<double, double>> gates(100, {1.0, 0.0});
    CHECK_THROWS_AS(oracle::run_1d(m0, keys, vals, gates), std::invalid_argument);

    oracle::Matrix big(9, std::vector<double>(9, 0.0));
    CHECK_THROWS_AS(oracle::run_1d(big, {{1.0}}, {{1.0}}, {{1.0, 0.0}}), std::invalid_argument);
}
