// SPDX-License-Identifier: Apache-2.0
#include "hydra/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace hydra {

namespace {
void check_pair(const Vec& actual, const Vec& predicted) {
    if (actual.empty()) throw std::invalid_argument("metric: empty input");
    if (actual.size() != predicted.size())
        throw std::invalid_argument("metric: actual/predicted lengths differ");
}
}  // namespace

double mse(const Vec& actual, const Vec& predicted) {
    check_pair(actual, predicted);
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double d = actual[i] - predicted[i];
        acc += d * d;
    }
    return acc / static_cast<double>(actual.size());
}

double mae(const Vec& actual, const Vec& predicted) {
    check_pair(actual, predicted);
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) acc += std::fabs(actual[i] - predicted[i]);
    return acc / static_cast<double>(actual.size());
}

double smape(const Vec& actual, const Vec& predicted, bool skip_zero) {
    check_pair(actual, predicted);
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double denom = std::fabs(actual[i]) + std::fabs(predicted[i]);
        if (denom == 0.0) {
            if (skip_zero) continue;
            throw std::domain_error("smape: |actual| + |predicted| is zero at index " +
                                    std::to_string(i));
        }
        acc += std::fabs(actual[i] - predicted[i]) / denom;
        ++used;
    }
    if (used == 0) throw std::domain_error("smape: all indices skipped");
    return 200.0 * acc / static_cast<double>(used);
}

double mase(const Vec& actual, const Vec& predicted, const Vec& insample, int seasonal_period) {
    check_pair(actual, predicted);
    if (seasonal_period < 1) throw std::invalid_argument("mase: seasonal period must be >= 1");
    if (static_cast<int>(insample.size()) <= seasonal_period)
        throw std::invalid_argument("mase: insample length must exceed the seasonal period");
    double denom = 0.0;
    for (std::size_t j = static_cast<std::size_t>(seasonal_period); j < insample.size(); ++j)
        denom += std::fabs(insample[j] - insample[j - seasonal_period]);
    denom /= static_cast<double>(insample.size() - static_cast<std::size_t>(seasonal_period));
    if (denom == 0.0)
        throw std::domain_error("mase: in-sample seasonal differences are all zero");
    return mae(actual, predicted) / denom;
}

double owa(double smape_model, double mase_model, double smape_naive2, double mase_naive2) {
    if (smape_naive2 <= 0.0 || mase_naive2 <= 0.0)
        throw std::domain_error("owa: reference metrics must be positive");
    return 0.5 * (smape_model / smape_naive2 + mase_model / mase_naive2);
}

NaiveForecasts naive_baselines(const Vec& context, int seasonal_period, int horizon) {
    if (horizon < 1) throw std::invalid_argument("naive_baselines: horizon must be >= 1");
    if (seasonal_period < 1)
        throw std::invalid_argument("naive_baselines: seasonal period must be >= 1");
    if (context.size() < static_cast<std::size_t>(seasonal_period) || context.empty())
        throw std::invalid_argument("naive_baselines: context shorter than one seasonal cycle");
    NaiveForecasts out;
    out.persistence.assign(static_cast<std::size_t>(horizon), context.back());
    out.seasonal_naive.resize(static_cast<std::size_t>(horizon));
    const std::size_t n = context.size();
    for (int h = 0; h < horizon; ++h)
        out.seasonal_naive[static_cast<std::size_t>(h)] =
            context[n - static_cast<std::size_t>(seasonal_period) +
                    static_cast<std::size_t>(h % seasonal_period)];
    return out;
}

}  // namespace hydra
