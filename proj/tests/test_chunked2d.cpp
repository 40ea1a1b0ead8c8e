// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "hydra/chunked2d.hpp"
#include "testutil.hpp"

using hydra::AnchorConvention;
using hydra::ChunkSpec2D;
using hydra::GateBundle;
using hydra::Mat;
using hydra::SeriesTensor;
using hydra::Vec;

namespace {

hydra::GridInputs random_inputs(hydra::RngStream& rng, int variates, int steps, int dim,
                                double max_rate = 0.2) {
    hydra::GridInputs in;
    in.variates = variates;
    in.steps = steps;
    in.d_key = dim;
    in.d_val = dim;
    const std::size_t n = static_cast<std::size_t>(variates) * steps;
    for (std::size_t i = 0; i < n; ++i) {
        in.keys.push_back(testutil::random_vec(rng, dim));
        in.vals.push_back(testutil::random_vec(rng, dim));
        in.queries.push_back(testutil::random_vec(rng, dim));
        in.gates.push_back(testutil::random_gates(rng, max_rate));
    }
    return in;
}

}  // namespace

TEST_CASE("chunk grid covers the grid exactly once") {
    auto chunks = hydra::chunk_grid(10, 5, ChunkSpec2D{4, 2});
    CHECK(chunks.size() == 3u * 3u);  // ceil(10/4) * ceil(5/2)
    std::vector<int> hits(50, 0);
    for (const auto& c : chunks) {
        CHECK(c.t1 - c.t0 >= 1);
        CHECK(c.v1 - c.v0 >= 1);
        for (int v = c.v0; v < c.v1; ++v)
            for (int t = c.t0; t < c.t1; ++t) ++hits[static_cast<std::size_t>(v * 10 + t)];
    }
    for (int h : hits) CHECK(h == 1);

    // ragged tail chunks keep their natural size
    CHECK(chunks.back().t1 - chunks.back().t0 == 2);
    CHECK(chunks.back().v1 - chunks.back().v0 == 1);

    CHECK_THROWS(hydra::chunk_grid(10, 5, ChunkSpec2D{11, 1}));
    CHECK_THROWS(hydra::chunk_grid(10, 5, ChunkSpec2D{0, 1}));
}

TEST_CASE("1x1 chunks equal the exact per-head-predecessor grid") {
    hydra::RngStream rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        const int variates = 1 + static_cast<int>(rng.next_u64() % 5);
        const int steps = 1 + static_cast<int>(rng.next_u64() % 20);
        const int dim = 1 + static_cast<int>(rng.next_u64() % 4);
        const auto in = random_inputs(rng, variates, steps, dim);
        const auto exact = hydra::run_grid(in, AnchorConvention::PerHeadPredecessor);
        const auto chunked = hydra::run_grid_chunked(in, ChunkSpec2D{1, 1});
        for (std::size_t i = 0; i < exact.head1.size(); ++i) {
            CHECK(hydra::max_abs_diff(exact.head1[i], chunked.head1[i]) <= 1e-12);
            CHECK(hydra::max_abs_diff(exact.head2[i], chunked.head2[i]) <= 1e-12);
        }
    }
}

TEST_CASE("zero rates make every chunking exact gated decay") {
    hydra::RngStream rng(62);
    auto in = random_inputs(rng, 5, 12, 2);
    for (GateBundle& g : in.gates) g.eta = g.gamma = g.lambda = g.omega = 0.0;
    const auto reference = hydra::run_grid(in, AnchorConvention::PerHeadPredecessor);
    for (const ChunkSpec2D spec : {ChunkSpec2D{1, 1}, ChunkSpec2D{3, 2}, ChunkSpec2D{12, 5}}) {
        const auto chunked = hydra::run_grid_chunked(in, spec);
        for (std::size_t i = 0; i < reference.head1.size(); ++i) {
            CHECK(hydra::max_abs_diff(reference.head1[i], chunked.head1[i]) <= 1e-12);
            CHECK(hydra::max_abs_diff(reference.head2[i], chunked.head2[i]) <= 1e-12);
        }
    }
}

TEST_CASE("single chunk over the golden input matches a scalar oracle") {
    // With one chunk covering the whole 3x6 grid, every gradient anchors at
    // the initial all-ones memory. Recompute that case with plain loops.
    SeriesTensor x(3, 6, 1);
    for (int v = 0; v < 3; ++v)
        for (int t = 0; t < 6; ++t) x.at(v, t) = v + t + 1;
    hydra::ProjectionConfig cfg;
    cfg.identity_init = true;
    auto [proj, gp] = hydra::init_projections(cfg, 0);
    gp.fixed = GateBundle{0.5, 0.5, 0.5, 0.5, 0.01, 0.01, 0.01, 0.01};

    const auto traj = hydra::run_grid_chunked(x, proj, gp, ChunkSpec2D{6, 3});

    double h1[3][6], h2[3][6];
    for (int v = 0; v < 3; ++v) {
        for (int t = 0; t < 6; ++t) {
            const double key = v + t + 1, val = 2.0 * key;
            const double u = (1.0 * key - val) * key;  // anchored at all-ones memory
            const double prev1 = t == 0 ? 0.0 : h1[v][t - 1];
            const double prev2 = t == 0 ? 0.0 : h2[v][t - 1];
            const double below1 = v == 0 ? 0.0 : h1[v - 1][t];
            const double below2 = v == 0 ? 0.0 : h2[v - 1][t];
            h1[v][t] = 0.5 * prev1 - 0.01 * u + 0.5 * prev2 - 0.01 * u;
            h2[v][t] = 0.5 * below1 - 0.01 * u + 0.5 * below2 - 0.01 * u;
        }
    }
    for (int v = 0; v < 3; ++v)
        for (int t = 0; t < 6; ++t) {
            CHECK(std::fabs(traj.h1(v, t)(0, 0) - h1[v][t]) <= 1e-10);
            CHECK(std::fabs(traj.h2(v, t)(0, 0) - h2[v][t]) <= 1e-10);
        }
}

TEST_CASE("row expansion: length-1 row is one linear step") {
    hydra::RngStream rng(63);
    hydra::RowChunkInputs row;
    row.m1_entry = testutil::random_mat(rng, 2, 2);
    row.m2_entry = testutil::random_mat(rng, 2, 2);
    row.alpha = {0.7};
    row.beta = {0.4};
    row.eta = {0.1};
    row.gamma = {0.05};
    row.g1 = {testutil::random_mat(rng, 2, 2)};
    row.g2 = {testutil::random_mat(rng, 2, 2)};
    const Mat got = hydra::expand_chunk_closed_form(row);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double want = 0.7 * row.m1_entry(a, b) - 0.1 * row.g1[0](a, b) +
                                0.4 * row.m2_entry(a, b) - 0.05 * row.g2[0](a, b);
            CHECK(got(a, b) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("row expansion: symmetric gates pair the two chains") {
    hydra::RngStream rng(64);
    hydra::RowChunkInputs row;
    const int len = 6, d = 3;
    row.m1_entry = testutil::random_mat(rng, d, d);
    row.m2_entry = row.m1_entry;
    for (int t = 0; t < len; ++t) {
        const double a = rng.uniform01(), e = rng.uniform(0.0, 0.2);
        row.alpha.push_back(a);
        row.beta.push_back(a);
        row.eta.push_back(e);
        row.gamma.push_back(e);
        const Mat g = testutil::random_mat(rng, d, d);
        row.g1.push_back(g);
        row.g2.push_back(g);
    }
    const Mat loop = hydra::expand_chunk_row_loop(row);
    const Mat closed = hydra::expand_chunk_closed_form(row);
    CHECK(hydra::max_abs_diff(loop, closed) <= 1e-10);
    // with identical chains the sum is exactly twice one chain
    hydra::RowChunkInputs half = row;
    half.beta.assign(len, 0.0);
    half.gamma.assign(len, 0.0);
    half.m2_entry = Mat(d, d, 0.0);
    const Mat single = hydra::expand_chunk_closed_form(half);
    for (std::size_t i = 0; i < single.data.size(); ++i)
        CHECK(std::fabs(2.0 * single.data[i] - closed.data[i]) <= 1e-10);
}

TEST_CASE("row expansion closed form equals loop form on random rows") {
    hydra::RngStream rng(65);
    for (int trial = 0; trial < 50; ++trial) {
        const int len = 1 + static_cast<int>(rng.next_u64() % 8);
        const int d = 1 + static_cast<int>(rng.next_u64() % 4);
        hydra::RowChunkInputs row;
        row.m1_entry = testutil::random_mat(rng, d, d);
        row.m2_entry = testutil::random_mat(rng, d, d);
        for (int t = 0; t < len; ++t) {
            row.alpha.push_back(rng.uniform01());
            row.beta.push_back(rng.uniform01());
            row.eta.push_back(rng.uniform(0.0, 0.3));
            row.gamma.push_back(rng.uniform(0.0, 0.3));
            row.g1.push_back(testutil::random_mat(rng, d, d));
            row.g2.push_back(testutil::random_mat(rng, d, d));
        }
        CHECK(hydra::max_abs_diff(hydra::expand_chunk_row_loop(row),
                                  hydra::expand_chunk_closed_form(row)) <= 1e-10);
    }
}

TEST_CASE("approximation gap") {
    hydra::RngStream rng(66);
    SeriesTensor x(4, 16, 1);
    for (double& v : x.values) v = rng.uniform(-1.0, 1.0);
    hydra::ProjectionConfig cfg;
    auto [proj, gp] = hydra::init_projections(cfg, 31);

    GateBundle g = testutil::random_gates(rng, 0.1);
    gp.fixed = g;
    CHECK(hydra::approximation_gap_2d(x, proj, gp, ChunkSpec2D{1, 1}) <= 1e-12);

    GateBundle off = g;
    off.eta = off.gamma = off.lambda = off.omega = 0.0;
    gp.fixed = off;
    CHECK(hydra::approximation_gap_2d(x, proj, gp, ChunkSpec2D{4, 2}) == 0.0);

    gp.fixed = g;
    const double gap = hydra::approximation_gap_2d(x, proj, gp, ChunkSpec2D{8, 4});
    CHECK(gap >= 0.0);
    CHECK(std::isfinite(gap));
}
