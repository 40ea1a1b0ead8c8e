// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hydra/chunked2d.hpp"
#include "hydra/grid.hpp"
#include "hydra/metrics.hpp"
#include "hydra/series.hpp"

namespace hydra {

/// Forecast-model settings. The defaults are an untrained configuration that
/// behaves as gently damped persistence: with w_val = 2 w_key the memory
/// ratio converges to 2 regardless of data scale (alpha near 1 keeps the
/// attractor scale-free), and w_out then sets the per-step rollout damping.
/// gamma stays 0 so head-2's slower-converging state cannot bias the
/// readout head's ratio above 2, which keeps the rollout contractive.
struct ForecastModelConfig {
    int d_key = 1;
    int d_val = 1;
    AnchorConvention conv = AnchorConvention::PrevTimeBoth;
    GateBundle gates{/*alpha=*/0.99, /*beta=*/0.01, /*theta=*/0.5, /*mu=*/0.5,
                     /*eta=*/0.05,  /*gamma=*/0.0, /*lambda=*/0.05, /*omega=*/0.05};
    double w_out_scale = 0.485;
    /// Standardize each variate's context to zero mean / unit variance before
    /// the grid pass and invert afterwards.
    bool standardize = true;
    /// Context-pass chunking; 1/1 runs the exact recurrence.
    int time_chunk = 1;
    int variate_chunk = 1;
};

struct MetricRow {
    double mse = 0.0;
    double mae = 0.0;
    std::optional<double> smape;  // absent when a denominator degenerates
    std::optional<double> mase;
    std::optional<double> owa;
};

struct ForecastReport {
    MetricRow model, persistence, seasonal_naive;
    SeriesTensor forecasts;  // V x H model predictions
    int variates = 0;
    int context_len = 0;
    int horizon = 0;
    int seasonal_period = 1;
    std::string source;       // data provenance
    std::string config_echo;  // full effective configuration
};

/// Runs the grid over the trailing context window and rolls the final column
/// forward autoregressively for H steps, feeding each output back as the
/// next input. Metrics are averaged over variates; OWA normalizes against
/// the seasonal-naive reference.
ForecastReport run_forecast_model(const SeriesTensor& series, const ForecastTask& task,
                                  const ForecastModelConfig& cfg, const MetricConfig& metric_cfg,
                                  const std::string& source_desc);

std::string render_text(const ForecastReport& report);
std::string render_csv(const ForecastReport& report);

}  // namespace hydra
