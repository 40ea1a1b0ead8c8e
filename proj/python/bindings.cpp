// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "hydra/chunked1d.hpp"
#include "hydra/chunked2d.hpp"
#include "hydra/forecast.hpp"
#include "hydra/grid.hpp"
#include "hydra/metrics.hpp"
#include "hydra/series.hpp"

namespace py = pybind11;

namespace {

using NestedMat = std::vector<std::vector<double>>;

hydra::Mat to_mat(const NestedMat& rows) {
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("matrix must be non-empty");
    hydra::Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    }
    return m;
}

NestedMat from_mat(const hydra::Mat& m) {
    NestedMat out(static_cast<std::size_t>(m.rows),
                  std::vector<double>(static_cast<std::size_t>(m.cols)));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    return out;
}

hydra::GateBundle gates_from_tuple(const std::vector<double>& g) {
    if (g.size() != 8)
        throw std::invalid_argument("gates must be [alpha, beta, theta, mu, eta, gamma, lambda, omega]");
    hydra::GateBundle out{g[0], g[1], g[2], g[3], g[4], g[5], g[6], g[7]};
    out.validate();
    return out;
}

std::vector<hydra::Gate1D> gates_1d(const std::vector<double>& alphas,
                                    const std::vector<double>& etas) {
    if (alphas.size() != etas.size()) throw std::invalid_argument("alpha/eta lengths differ");
    std::vector<hydra::Gate1D> out;
    out.reserve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) out.push_back({alphas[i], etas[i]});
    return out;
}

std::vector<NestedMat> states_out(const std::vector<hydra::LogMemoryState>& states) {
    std::vector<NestedMat> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(from_mat(s.mlog));
    return out;
}

hydra::SeriesTensor series_from_rows(const NestedMat& rows) {
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("series must be non-empty");
    hydra::SeriesTensor x(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), 1);
    for (std::size_t v = 0; v < rows.size(); ++v) {
        if (rows[v].size() != rows[0].size()) throw std::invalid_argument("ragged series");
        for (std::size_t t = 0; t < rows[v].size(); ++t)
            x.at(static_cast<int>(v), static_cast<int>(t)) = rows[v][t];
    }
    return x;
}

hydra::GridInputs scalar_grid_inputs(const NestedMat& series, const std::vector<double>& gates,
                                     double key_scale, double val_scale) {
    const hydra::SeriesTensor x = series_from_rows(series);
    hydra::ProjectionConfig pcfg;
    pcfg.identity_init = true;
    auto [proj, gp] = hydra::init_projections(pcfg, 0);
    for (double& w : proj.w_key.data) w *= key_scale;
    for (double& w : proj.w_query.data) w *= key_scale;
    for (double& w : proj.w_val.data) w *= val_scale / 2.0;  // identity init already has 2I
    gp.fixed = gates_from_tuple(gates);
    return hydra::make_grid_inputs(x, proj, gp);
}

py::dict report_dict(const hydra::ForecastReport& r) {
    auto row = [](const hydra::MetricRow& m) {
        py::dict d;
        d["mse"] = m.mse;
        d["mae"] = m.mae;
        d["smape"] = m.smape ? py::object(py::float_(*m.smape)) : py::object(py::none());
        d["mase"] = m.mase ? py::object(py::float_(*m.mase)) : py::object(py::none());
        d["owa"] = m.owa ? py::object(py::float_(*m.owa)) : py::object(py::none());
        return d;
    };
    py::dict d;
    d["model"] = row(r.model);
    d["persistence"] = row(r.persistence);
    d["seasonal_naive"] = row(r.seasonal_naive);
    NestedMat forecasts(static_cast<std::size_t>(r.forecasts.variates));
    for (int v = 0; v < r.forecasts.variates; ++v)
        for (int t = 0; t < r.forecasts.steps; ++t)
            forecasts[static_cast<std::size_t>(v)].push_back(r.forecasts.at(v, t));
    d["forecasts"] = forecasts;
    d["config"] = r.config_echo;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hydra, m) {
    m.doc() = "Dual-memory 2D recurrence toolkit: log-domain multiplicative memories, "
              "chunk-wise parallel evaluation, synthetic forecasting harness.";

    // numeric kernel
    m.def("matvec", [](const NestedMat& mat, const std::vector<double>& x) {
        return hydra::matvec(to_mat(mat), x);
    });
    m.def("outer", [](const std::vector<double>& a, const std::vector<double>& b) {
        return from_mat(hydra::outer(a, b));
    });
    m.def("emap_exp", [](const NestedMat& mat) { return from_mat(hydra::emap_exp(to_mat(mat))); });
    m.def("emap_log", [](const NestedMat& mat) { return from_mat(hydra::emap_log(to_mat(mat))); });
    m.def("suffix_products", &hydra::suffix_products);

    // synthetic series
    m.def(
        "generate_sar",
        [](int p, int q, int s, const std::vector<double>& phi,
           const std::vector<double>& eta_seasonal, double noise_std, std::uint64_t seed,
           int variates, int steps, const std::vector<double>& deterministic_init) {
            hydra::SarParams params{p, q, s, phi, eta_seasonal, noise_std, seed, deterministic_init};
            const hydra::SeriesTensor x = hydra::generate_sar(params, variates, steps);
            NestedMat rows(static_cast<std::size_t>(variates));
            for (int v = 0; v < variates; ++v)
                for (int t = 0; t < steps; ++t)
                    rows[static_cast<std::size_t>(v)].push_back(x.at(v, t));
            return rows;
        },
        py::arg("p"), py::arg("q"), py::arg("s"), py::arg("phi"), py::arg("eta_seasonal"),
        py::arg("noise_std"), py::arg("seed"), py::arg("variates"), py::arg("steps"),
        py::arg("deterministic_init") = std::vector<double>{});

    // 1D recurrence
    m.def("run_sequence", [](const NestedMat& m0, const NestedMat& keys, const NestedMat& vals,
                             const std::vector<double>& alphas, const std::vector<double>& etas) {
        return states_out(hydra::run_sequence({to_mat(m0)}, keys, vals, gates_1d(alphas, etas)));
    });
    m.def("run_chunked", [](const NestedMat& m0, const NestedMat& keys, const NestedMat& vals,
                            const std::vector<double>& alphas, const std::vector<double>& etas,
                            int chunk_len) {
        return states_out(hydra::run_chunked({to_mat(m0)}, keys, vals, gates_1d(alphas, etas),
                                             hydra::ChunkSpec1D{chunk_len}));
    });
    m.def("run_chunked_closed_form",
          [](const NestedMat& m0, const NestedMat& keys, const NestedMat& vals,
             const std::vector<double>& alphas, const std::vector<double>& etas, int chunk_len) {
              return states_out(hydra::run_chunked_closed_form(
                  {to_mat(m0)}, keys, vals, gates_1d(alphas, etas), hydra::ChunkSpec1D{chunk_len}));
          });

    // 2D grid over a scalar series with fixed gates; returns the linear-domain
    // head matrices as V x T nested lists.
    auto grid_out = [](const hydra::GridTrajectory& traj) {
        NestedMat h1(static_cast<std::size_t>(traj.variates)), h2(h1);
        for (int v = 0; v < traj.variates; ++v)
            for (int t = 0; t < traj.steps; ++t) {
                h1[static_cast<std::size_t>(v)].push_back(std::exp(traj.h1(v, t)(0, 0)));
                h2[static_cast<std::size_t>(v)].push_back(std::exp(traj.h2(v, t)(0, 0)));
            }
        return py::make_tuple(h1, h2);
    };
    m.def(
        "run_grid_scalar",
        [grid_out](const NestedMat& series, const std::vector<double>& gates,
                   const std::string& anchor, double key_scale, double val_scale) {
            hydra::GridInputs in = scalar_grid_inputs(series, gates, key_scale, val_scale);
            return grid_out(hydra::run_grid(in, hydra::anchor_from_string(anchor)));
        },
        py::arg("series"), py::arg("gates"), py::arg("anchor") = "prev_time_both",
        py::arg("key_scale") = 1.0, py::arg("val_scale") = 2.0);
    m.def(
        "run_grid_chunked_scalar",
        [grid_out](const NestedMat& series, const std::vector<double>& gates, int chunk_t,
                   int chunk_v, double key_scale, double val_scale) {
            hydra::GridInputs in = scalar_grid_inputs(series, gates, key_scale, val_scale);
            return grid_out(hydra::run_grid_chunked(in, hydra::ChunkSpec2D{chunk_t, chunk_v}));
        },
        py::arg("series"), py::arg("gates"), py::arg("chunk_t"), py::arg("chunk_v"),
        py::arg("key_scale") = 1.0, py::arg("val_scale") = 2.0);

    // metrics
    m.def("mse", &hydra::mse);
    m.def("mae", &hydra::mae);
    m.def("smape", &hydra::smape, py::arg("actual"), py::arg("predicted"),
          py::arg("skip_zero") = false);
    m.def("mase", &hydra::mase);
    m.def("owa", &hydra::owa);
    m.def("naive_baselines", [](const std::vector<double>& context, int s, int horizon) {
        hydra::NaiveForecasts nf = hydra::naive_baselines(context, s, horizon);
        return py::make_tuple(nf.persistence, nf.seasonal_naive);
    });

    // forecasting harness
    m.def(
        "forecast",
        [](const NestedMat& series, int context, int horizon, int seasonal_period,
           const std::vector<double>& gates, double w_out, bool standardize, int chunk_t,
           int chunk_v, const std::string& anchor) {
            hydra::ForecastModelConfig cfg;
            if (!gates.empty()) cfg.gates = gates_from_tuple(gates);
            cfg.w_out_scale = w_out;
            cfg.standardize = standardize;
            cfg.time_chunk = chunk_t;
            cfg.variate_chunk = chunk_v;
            cfg.conv = hydra::anchor_from_string(anchor);
            hydra::MetricConfig mc{seasonal_period, horizon};
            hydra::ForecastReport r = hydra::run_forecast_model(
                series_from_rows(series), hydra::ForecastTask{context, horizon}, cfg, mc, "python");
            return report_dict(r);
        },
        py::arg("series"), py::arg("context"), py::arg("horizon"), py::arg("seasonal_period") = 1,
        py::arg("gates") = std::vector<double>{}, py::arg("w_out") = 0.485,
        py::arg("standardize") = true, py::arg("chunk_t") = 1, py::arg("chunk_v") = 1,
        py::arg("anchor") = "prev_time_both");
}
