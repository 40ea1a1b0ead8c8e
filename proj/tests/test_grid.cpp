// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdlib>

#include <doctest.h>

#include "hydra/grid.hpp"
#include "testutil.hpp"

using hydra::AnchorConvention;
using hydra::GateBundle;
using hydra::GridTraversal;
using hydra::Mat;
using hydra::SeriesTensor;
using hydra::Vec;

namespace {

const GateBundle kGoldenGates{0.5, 0.5, 0.5, 0.5, 0.01, 0.01, 0.01, 0.01};

SeriesTensor golden_series() {
    SeriesTensor x(3, 6, 1);
    for (int v = 0; v < 3; ++v)
        for (int t = 0; t < 6; ++t) x.at(v, t) = v + t + 1;
    return x;
}

std::pair<hydra::ProjectionSet, hydra::GateProjection> golden_projections() {
    hydra::ProjectionConfig cfg;
    cfg.identity_init = true;
    auto pair = hydra::init_projections(cfg, 0);
    pair.second.fixed = kGoldenGates;
    return pair;
}

SeriesTensor random_series(hydra::RngStream& rng, int variates, int steps) {
    SeriesTensor x(variates, steps, 1);
    for (double& v : x.values) v = rng.uniform(-1.0, 1.0);
    return x;
}

}  // namespace

TEST_CASE("cell_update reference cells") {
    const Mat zero(1, 1, 0.0);

    // first cell of the worked grid: x = 1, key 1, value 2
    auto [h1, h2] = hydra::cell_update(zero, zero, zero, zero, Vec{1.0}, Vec{2.0}, kGoldenGates,
                                       AnchorConvention::PrevTimeBoth);
    CHECK(h1(0, 0) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(h2(0, 0) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(std::exp(h1(0, 0)) == doctest::Approx(1.020).epsilon(5e-4));

    // cell (v=2, t=2): predecessors from the worked grid, key 3, value 6
    const Mat h1_prev_t(1, 1, 0.08), h2_prev_t(1, 1, 0.10);
    const Mat h1_prev_v(1, 1, 0.0983839), h2_prev_v(1, 1, 0.0783839);
    auto [n1, n2] = hydra::cell_update(h1_prev_t, h2_prev_t, h1_prev_v, h2_prev_v, Vec{3.0},
                                       Vec{6.0}, kGoldenGates, AnchorConvention::PrevTimeBoth);
    CHECK(hydra::grad(hydra::emap_exp(h1_prev_t), Vec{3.0}, Vec{6.0})(0, 0) ==
          doctest::Approx(-8.250).epsilon(1e-4));
    CHECK(hydra::grad(hydra::emap_exp(h2_prev_t), Vec{3.0}, Vec{6.0})(0, 0) ==
          doctest::Approx(-8.053).epsilon(1e-4));
    CHECK(n1(0, 0) == doctest::Approx(0.25304).epsilon(2e-4));
    CHECK(n2(0, 0) == doctest::Approx(0.25142).epsilon(2e-4));

    // all gates zero resets both heads to the multiplicative identity
    GateBundle off{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    auto [z1, z2] = hydra::cell_update(h1_prev_t, h2_prev_t, h1_prev_v, h2_prev_v, Vec{3.0},
                                       Vec{6.0}, off, AnchorConvention::PrevTimeBoth);
    CHECK(z1(0, 0) == 0.0);
    CHECK(z2(0, 0) == 0.0);
}

TEST_CASE("golden 3x6 grid reproduction") {
    auto [proj, gp] = golden_projections();
    const hydra::GridTrajectory traj =
        hydra::run_grid(golden_series(), proj, gp, AnchorConvention::PrevTimeBoth);

    static const double expected_h1[3][6] = {
        {1.020, 1.103, 1.286, 1.574, 1.890, 2.100},
        {1.083, 1.288, 1.617, 1.949, 2.058, 2.077},
        {1.197, 1.590, 1.957, 2.026, 2.020, 2.023}};
    static const double expected_h2[3][6] = {
        {1.020, 1.082, 1.177, 1.279, 1.332, 1.323},
        {1.105, 1.286, 1.546, 1.749, 1.769, 1.814},
        {1.310, 1.634, 1.919, 1.930, 1.949, 1.979}};
    for (int v = 0; v < 3; ++v) {
        for (int t = 0; t < 6; ++t) {
            CHECK(std::fabs(std::exp(traj.h1(v, t)(0, 0)) - expected_h1[v][t]) <= 5e-3);
            CHECK(std::fabs(std::exp(traj.h2(v, t)(0, 0)) - expected_h2[v][t]) <= 5e-3);
        }
    }

    // intermediate head-1 log anchors
    const double anchors[8][3] = {{0, 0, 0.02000}, {0, 1, 0.09838}, {0, 2, 0.25174},
                                  {0, 3, 0.45335}, {0, 4, 0.63652}, {0, 5, 0.74172},
                                  {1, 0, 0.08000}, {1, 1, 0.25304}};
    for (const auto& a : anchors)
        CHECK(std::fabs(traj.h1(static_cast<int>(a[0]), static_cast<int>(a[1]))(0, 0) - a[2]) <=
              5e-5);

    // head-2 log values along the same walkthrough
    const double anchors2[8][3] = {{0, 0, 0.02000}, {0, 1, 0.07838}, {0, 2, 0.16336},
                                   {0, 3, 0.24580}, {0, 4, 0.28694}, {0, 5, 0.27999},
                                   {1, 0, 0.10000}, {1, 1, 0.25142}};
    for (const auto& a : anchors2)
        CHECK(std::fabs(traj.h2(static_cast<int>(a[0]), static_cast<int>(a[1]))(0, 0) - a[2]) <=
              5e-5);
}

TEST_CASE("traversal order does not change the trajectory") {
    hydra::RngStream rng(51);
    const SeriesTensor x = random_series(rng, 4, 9);
    hydra::ProjectionConfig cfg;
    cfg.d_in = 1;
    cfg.d_key = 2;
    cfg.d_val = 2;
    auto [proj, gp] = hydra::init_projections(cfg, 3);
    gp.fixed = testutil::random_gates(rng);

    for (AnchorConvention conv :
         {AnchorConvention::PrevTimeBoth, AnchorConvention::PerHeadPredecessor}) {
        const auto a = hydra::run_grid(x, proj, gp, conv, GridTraversal::TimeMajor);
        const auto b = hydra::run_grid(x, proj, gp, conv, GridTraversal::VariateMajor);
        const auto c = hydra::run_grid(x, proj, gp, conv, GridTraversal::Wavefront);
        for (std::size_t i = 0; i < a.head1.size(); ++i) {
            CHECK(a.head1[i].data == b.head1[i].data);
            CHECK(a.head2[i].data == b.head2[i].data);
            CHECK(a.head1[i].data == c.head1[i].data);
            CHECK(a.head2[i].data == c.head2[i].data);
        }
    }
}

TEST_CASE("wavefront scheduling with threads is bitwise identical") {
    hydra::RngStream rng(52);
    const SeriesTensor x = random_series(rng, 6, 12);
    hydra::ProjectionConfig cfg;
    auto [proj, gp] = hydra::init_projections(cfg, 5);
    gp.fixed = testutil::random_gates(rng);

    const auto sequential = hydra::run_grid(x, proj, gp, AnchorConvention::PrevTimeBoth);
    setenv("HYDRA_THREADS", "4", 1);
    const auto threaded = hydra::run_grid(x, proj, gp, AnchorConvention::PrevTimeBoth);
    unsetenv("HYDRA_THREADS");
    for (std::size_t i = 0; i < sequential.head1.size(); ++i) {
        CHECK(sequential.head1[i].data == threaded.head1[i].data);
        CHECK(sequential.head2[i].data == threaded.head2[i].data);
    }
}

TEST_CASE("V=1 with cross gates zero reduces to the 1D recurrence") {
    hydra::RngStream rng(53);
    const SeriesTensor x = random_series(rng, 1, 20);
    hydra::ProjectionConfig cfg;
    cfg.d_key = 3;
    cfg.d_val = 3;
    auto [proj, gp] = hydra::init_projections(cfg, 11);
    GateBundle g;
    g.alpha = 0.8;
    g.eta = 0.1;
    gp.fixed = g;

    const auto traj = hydra::run_grid(x, proj, gp, AnchorConvention::PrevTimeBoth);

    std::vector<Vec> keys, vals;
    std::vector<hydra::Gate1D> gates;
    for (int t = 0; t < 20; ++t) {
        auto kvq = hydra::project_kvq(proj, x.cell(0, t));
        keys.push_back(kvq.key);
        vals.push_back(kvq.value);
        gates.push_back(hydra::Gate1D{0.8, 0.1});
    }
    const auto seq = hydra::run_sequence(hydra::LogMemoryState::initial(3, 3), keys, vals, gates);
    for (int t = 0; t < 20; ++t)
        CHECK(hydra::max_abs_diff(traj.h1(0, t), seq[static_cast<std::size_t>(t)].mlog) <= 1e-12);
}

TEST_CASE("boundary cells use the initial state") {
    // first row and first column expand by hand from zero log-state
    auto [proj, gp] = golden_projections();
    const SeriesTensor x = golden_series();
    const auto traj = hydra::run_grid(x, proj, gp, AnchorConvention::PrevTimeBoth);

    // (v=0, t=0): both predecessors are boundaries; gradient at all-ones is
    // (1*1 - 2)*1 = -1, so each head is 0.5*0 + 0.01 + 0.5*0 + 0.01.
    CHECK(traj.h1(0, 0)(0, 0) == doctest::Approx(0.02).epsilon(1e-12));
    // (v=1, t=0): time predecessor is a boundary; x = 2, gradient -4.
    CHECK(traj.h1(1, 0)(0, 0) == doctest::Approx(0.08).epsilon(1e-12));
    // its head-2 mixes the (v=0, t=0) states: 0.5*0.02 + 0.04 + 0.5*0.02 + 0.04
    CHECK(traj.h2(1, 0)(0, 0) == doctest::Approx(0.10).epsilon(1e-12));
}

TEST_CASE("readout") {
    // all-ones memory with identity readout returns the query
    hydra::GridTrajectory traj(1, 1, 1, 1);
    traj.head1[0] = Mat(1, 1, 0.0);
    traj.head2[0] = Mat(1, 1, 0.0);
    const SeriesTensor out = hydra::readout(traj, {Vec{1.0}}, Mat::identity(1));
    CHECK(out.at(0, 0) == 1.0);

    // golden grid, queries equal keys, identity readout
    auto [proj, gp] = golden_projections();
    const auto golden = hydra::run_grid(golden_series(), proj, gp, AnchorConvention::PrevTimeBoth);
    std::vector<Vec> queries;
    for (int v = 0; v < 3; ++v)
        for (int t = 0; t < 6; ++t) queries.push_back(Vec{0.0});
    // (v, t) indexing of the query container matches the trajectory
    for (int v = 0; v < 3; ++v)
        for (int t = 0; t < 6; ++t)
            queries[static_cast<std::size_t>(v) * 6 + t] = Vec{static_cast<double>(v + t + 1)};
    const SeriesTensor o = hydra::readout(golden, queries, Mat::identity(1));
    CHECK(o.at(0, 0) == doctest::Approx(1.020 * 1.0).epsilon(5e-4));

    // random grids match a scalar recomputation
    hydra::RngStream rng(54);
    const SeriesTensor x = random_series(rng, 2, 4);
    hydra::ProjectionConfig cfg;
    cfg.d_key = 2;
    cfg.d_val = 2;
    cfg.d_out = 2;
    auto [rproj, rgp] = hydra::init_projections(cfg, 8);
    rgp.fixed = testutil::random_gates(rng);
    const hydra::GridInputs in = hydra::make_grid_inputs(x, rproj, rgp);
    const auto traj2 = hydra::run_grid(in, AnchorConvention::PrevTimeBoth);
    const SeriesTensor outs = hydra::readout(traj2, in.queries, rproj.w_out);
    for (int v = 0; v < 2; ++v) {
        for (int t = 0; t < 4; ++t) {
            const Vec& q = in.queries[in.idx(v, t)];
            for (int f = 0; f < 2; ++f) {
                double want = 0.0;
                for (int a = 0; a < 2; ++a) {
                    double mem_q = 0.0;
                    for (int b = 0; b < 2; ++b)
                        mem_q += std::exp(traj2.h1(v, t)(a, b)) * q[static_cast<std::size_t>(b)];
                    want += rproj.w_out(f, a) * mem_q;
                }
                CHECK(outs.at(v, t, f) == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("cross-variate isolation") {
    hydra::RngStream rng(55);
    const int variates = 4, steps = 10, v_star = 1;
    const SeriesTensor x = random_series(rng, variates, steps);

    hydra::ProjectionConfig cfg;
    auto [proj, gp] = hydra::init_projections(cfg, 13);

    GateBundle isolated = testutil::random_gates(rng);
    isolated.beta = 0.0;
    isolated.gamma = 0.0;
    gp.fixed = isolated;

    for (int trial = 0; trial < 50; ++trial) {
        SeriesTensor perturbed = x;
        for (int v = 0; v < variates; ++v) {
            if (v == v_star) continue;
            for (int t = 0; t < steps; ++t) perturbed.at(v, t) += rng.uniform(-1.0, 1.0);
        }
        CHECK(hydra::cross_variate_isolation_check(x, perturbed, proj, gp, v_star,
                                                   AnchorConvention::PrevTimeBoth));
    }

    // beta != 0 reopens the cross-variate path
    GateBundle leaky = isolated;
    leaky.beta = 0.5;
    gp.fixed = leaky;
    SeriesTensor perturbed = x;
    for (int t = 0; t < steps; ++t) perturbed.at(0, t) += 1.0;
    CHECK_FALSE(hydra::cross_variate_isolation_check(x, perturbed, proj, gp, v_star,
                                                     AnchorConvention::PrevTimeBoth));

    // V = 1 is vacuously isolated
    const SeriesTensor single = random_series(rng, 1, 5);
    gp.fixed = testutil::random_gates(rng);
    CHECK(hydra::cross_variate_isolation_check(single, single, proj, gp, 0,
                                               AnchorConvention::PrevTimeBoth));
}

TEST_CASE("streaming frontier matches the trajectory runner") {
    hydra::RngStream rng(56);
    const SeriesTensor x = random_series(rng, 3, 15);
    hydra::ProjectionConfig cfg;
    cfg.d_key = 2;
    cfg.d_val = 2;
    auto [proj, gp] = hydra::init_projections(cfg, 21);
    gp.fixed = testutil::random_gates(rng);
    const hydra::GridInputs in = hydra::make_grid_inputs(x, proj, gp);

    for (AnchorConvention conv :
         {AnchorConvention::PrevTimeBoth, AnchorConvention::PerHeadPredecessor}) {
        const auto traj = hydra::run_grid(in, conv);
        hydra::GridFrontier f = hydra::GridFrontier::initial(3, 2, 2);
        std::vector<Vec> keys(3), vals(3);
        std::vector<GateBundle> gates(3);
        for (int t = 0; t < 15; ++t) {
            for (int v = 0; v < 3; ++v) {
                keys[static_cast<std::size_t>(v)] = in.keys[in.idx(v, t)];
                vals[static_cast<std::size_t>(v)] = in.vals[in.idx(v, t)];
                gates[static_cast<std::size_t>(v)] = in.gates[in.idx(v, t)];
            }
            hydra::advance_column(f, keys, vals, gates, conv);
        }
        for (int v = 0; v < 3; ++v) {
            CHECK(hydra::max_abs_diff(f.h1log[static_cast<std::size_t>(v)], traj.h1(v, 14)) <=
                  1e-12);
            CHECK(hydra::max_abs_diff(f.h2log[static_cast<std::size_t>(v)], traj.h2(v, 14)) <=
                  1e-12);
        }
    }
}
