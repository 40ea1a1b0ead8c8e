// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hydra/mat.hpp"

namespace hydra {

struct MetricConfig {
    int seasonal_period = 1;  // s, used by MASE and the seasonal baseline
    int horizon = 1;          // F
};

double mse(const Vec& actual, const Vec& predicted);

double mae(const Vec& actual, const Vec& predicted);

/// 200/F * sum |a - p| / (|a| + |p|), always in [0, 200]. An index with a
/// zero denominator raises std::domain_error unless skip_zero is set, in
/// which case the index is dropped and F adjusted.
double smape(const Vec& actual, const Vec& predicted, bool skip_zero = false);

/// Mean absolute error scaled by the seasonal-difference MAE of the
/// in-sample series (the standard form; a constant in-sample series has no
/// scale and raises std::domain_error).
double mase(const Vec& actual, const Vec& predicted, const Vec& insample, int seasonal_period);

/// 0.5 * (smape/smape_naive2 + mase/mase_naive2).
double owa(double smape_model, double mase_model, double smape_naive2, double mase_naive2);

struct NaiveForecasts {
    Vec persistence;     // last context value repeated
    Vec seasonal_naive;  // last seasonal cycle repeated (persistence when s = 1)
};

NaiveForecasts naive_baselines(const Vec& context, int seasonal_period, int horizon);

}  // namespace hydra
