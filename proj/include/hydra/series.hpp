// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hydra/mat.hpp"

namespace hydra {

/// Multivariate series: V variates x T steps x d_in features, all finite.
struct SeriesTensor {
    int variates = 0;
    int steps = 0;
    int dim = 1;
    std::vector<double> values;  // indexed (v, t, feature)

    SeriesTensor() = default;
    SeriesTensor(int v, int t, int d);

    double& at(int v, int t, int f = 0);
    double at(int v, int t, int f = 0) const;

    /// The d_in-vector at one grid cell.
    Vec cell(int v, int t) const;
};

/// Seasonal autoregressive process parameters:
///   x_k = sum_i phi[i] x_{k-1-i} + sum_j eta_seasonal[j] x_{k-(j+1)s} + noise.
/// The seasonal coefficients are named eta_seasonal to keep them apart from
/// the memory learning-rate gates.
struct SarParams {
    int p = 0;
    int q = 0;
    int s = 1;
    std::vector<double> phi;
    std::vector<double> eta_seasonal;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
    /// When non-empty, supplies the burn-in values for every variate instead
    /// of noise draws (must have length max(p, q*s)). Seed-independent.
    std::vector<double> deterministic_init;

    int burn_in() const;
    void validate() const;
};

struct ForecastTask {
    int context_len = 1;
    int horizon = 1;
};

/// Wide CSV: UTF-8, comma separated, first row is a header, one row per time
/// step ascending. With skip_time_col the first column is dropped.
SeriesTensor load_csv(const std::string& path, bool skip_time_col = false);

void write_csv(const SeriesTensor& x, const std::string& path, bool with_time_col = false);

/// Each variate is generated from its own seed substream; deterministic given
/// (params, variates, steps). Aborts if any |x_k| exceeds 1e12.
SeriesTensor generate_sar(const SarParams& params, int variates, int steps);

/// Trailing window split: context = steps [T-L-H+1, T-H], target = the last H.
std::pair<SeriesTensor, SeriesTensor> split_task(const SeriesTensor& x, const ForecastTask& task);

}  // namespace hydra
