// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "hydra/metrics.hpp"
#include "hydra/rng.hpp"
#include "hydra/series.hpp"
#include "testutil.hpp"

using hydra::Vec;

TEST_CASE("mse and mae") {
    CHECK(hydra::mse(Vec{1.0, 2.0, 3.0}, Vec{1.0, 2.0, 3.0}) == 0.0);
    CHECK(hydra::mae(Vec{1.0, 2.0, 3.0}, Vec{1.0, 2.0, 3.0}) == 0.0);
    CHECK(hydra::mse(Vec{0.0, 0.0}, Vec{1.0, 1.0}) == 1.0);
    CHECK(hydra::mae(Vec{0.0, 0.0}, Vec{1.0, 1.0}) == 1.0);
    CHECK_THROWS_AS(hydra::mse(Vec{}, Vec{}), std::invalid_argument);
    CHECK_THROWS_AS(hydra::mae(Vec{1.0}, Vec{1.0, 2.0}), std::invalid_argument);

    hydra::RngStream rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        const Vec a = testutil::random_vec(rng, 10), p = testutil::random_vec(rng, 10);
        double se = 0.0, ae = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            se += (a[i] - p[i]) * (a[i] - p[i]);
            ae += std::fabs(a[i] - p[i]);
        }
        CHECK(std::fabs(hydra::mse(a, p) - se / 10.0) <= 1e-12);
        CHECK(std::fabs(hydra::mae(a, p) - ae / 10.0) <= 1e-12);
    }
}

TEST_CASE("smape") {
    CHECK(hydra::smape(Vec{1.0, 2.0}, Vec{1.0, 2.0}) == 0.0);
    CHECK(hydra::smape(Vec{1.0}, Vec{3.0}) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK_THROWS_AS(hydra::smape(Vec{0.0}, Vec{0.0}), std::domain_error);
    // skip-zero drops the degenerate index and renormalizes
    CHECK(hydra::smape(Vec{0.0, 1.0}, Vec{0.0, 3.0}, /*skip_zero=*/true) ==
          doctest::Approx(100.0).epsilon(1e-12));

    hydra::RngStream rng(72);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec a = testutil::random_vec(rng, 8, -5.0, 5.0);
        const Vec p = testutil::random_vec(rng, 8, -5.0, 5.0);
        const double s = hydra::smape(a, p);
        CHECK(s >= 0.0);
        CHECK(s <= 200.0);
    }
}

TEST_CASE("mase") {
    CHECK(hydra::mase(Vec{5.0}, Vec{5.0}, Vec{1.0, 2.0, 3.0, 4.0}, 1) == 0.0);
    // seasonal-difference denominator is 1, numerator |5-7| = 2
    CHECK(hydra::mase(Vec{5.0}, Vec{7.0}, Vec{1.0, 2.0, 3.0, 4.0}, 1) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(hydra::mase(Vec{1.0}, Vec{1.0}, Vec{2.0, 2.0, 2.0}, 1), std::domain_error);
    CHECK_THROWS_AS(hydra::mase(Vec{1.0}, Vec{1.0}, Vec{1.0}, 2), std::invalid_argument);

    // against a seasonal-naive forecast the ratio is the error scale itself
    const Vec insample{1.0, 3.0, 2.0, 5.0, 4.0, 7.0};
    const Vec actual{6.0, 9.0};
    const Vec predicted{4.0, 7.0};  // seasonal-naive with s=2
    double denom = 0.0;
    for (std::size_t j = 2; j < insample.size(); ++j)
        denom += std::fabs(insample[j] - insample[j - 2]);
    denom /= 4.0;
    CHECK(hydra::mase(actual, predicted, insample, 2) ==
          doctest::Approx(hydra::mae(actual, predicted) / denom).epsilon(1e-12));
}

TEST_CASE("owa") {
    CHECK(hydra::owa(10.0, 2.0, 10.0, 2.0) == 1.0);
    CHECK(hydra::owa(5.0, 1.0, 10.0, 2.0) == 0.5);
    CHECK_THROWS_AS(hydra::owa(1.0, 1.0, 0.0, 1.0), std::domain_error);

    hydra::RngStream rng(73);
    for (int trial = 0; trial < 25; ++trial) {
        const double sm = rng.uniform(0.1, 50.0), mm = rng.uniform(0.1, 5.0);
        const double sn = rng.uniform(0.1, 50.0), mn = rng.uniform(0.1, 5.0);
        CHECK(std::fabs(hydra::owa(sm, mm, sn, mn) - 0.5 * (sm / sn + mm / mn)) <= 1e-12);
    }
}

TEST_CASE("metrics are invariant under paired permutation") {
    hydra::RngStream rng(74);
    Vec a = testutil::random_vec(rng, 12, 0.5, 5.0), p = testutil::random_vec(rng, 12, 0.5, 5.0);
    const double m0 = hydra::mse(a, p), a0 = hydra::mae(a, p), s0 = hydra::smape(a, p);
    // one concrete permutation applied to both
    std::vector<std::size_t> perm(12);
    for (std::size_t i = 0; i < 12; ++i) perm[i] = (i * 5 + 3) % 12;
    Vec ap(12), pp(12);
    for (std::size_t i = 0; i < 12; ++i) {
        ap[i] = a[perm[i]];
        pp[i] = p[perm[i]];
    }
    CHECK(hydra::mse(ap, pp) == doctest::Approx(m0).epsilon(1e-12));
    CHECK(hydra::mae(ap, pp) == doctest::Approx(a0).epsilon(1e-12));
    CHECK(hydra::smape(ap, pp) == doctest::Approx(s0).epsilon(1e-12));
}

TEST_CASE("naive baselines") {
    const auto nf = hydra::naive_baselines(Vec{1.0, 2.0, 3.0}, 1, 2);
    CHECK(nf.persistence == Vec{3.0, 3.0});
    CHECK(nf.seasonal_naive == Vec{3.0, 3.0});

    const auto seasonal = hydra::naive_baselines(Vec{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 3, 3);
    CHECK(seasonal.seasonal_naive == Vec{4.0, 5.0, 6.0});
    // horizons longer than one cycle repeat it
    const auto wrapped = hydra::naive_baselines(Vec{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 3, 5);
    CHECK(wrapped.seasonal_naive == Vec{4.0, 5.0, 6.0, 4.0, 5.0});

    CHECK_THROWS_AS(hydra::naive_baselines(Vec{1.0}, 3, 2), std::invalid_argument);
}

TEST_CASE("seasonal-naive achieves zero error on a pure seasonal series") {
    hydra::SarParams params;
    params.q = 1;
    params.s = 4;
    params.eta_seasonal = {1.0};
    params.deterministic_init = {1.0, -0.5, 2.0, 0.25};
    const hydra::SeriesTensor x = hydra::generate_sar(params, 1, 24);
    auto [ctx, tgt] = hydra::split_task(x, {16, 8});
    Vec context, target;
    for (int t = 0; t < 16; ++t) context.push_back(ctx.at(0, t));
    for (int t = 0; t < 8; ++t) target.push_back(tgt.at(0, t));
    const auto nf = hydra::naive_baselines(context, 4, 8);
    CHECK(hydra::mse(target, nf.seasonal_naive) <= 1e-24);
}
