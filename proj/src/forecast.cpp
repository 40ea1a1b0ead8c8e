// SPDX-License-Identifier: Apache-2.0
#include "hydra/forecast.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hydra {

namespace {

struct Standardizer {
    Vec mean, scale;

    static Standardizer fit(const SeriesTensor& ctx, bool enabled) {
        Standardizer s;
        s.mean.assign(static_cast<std::size_t>(ctx.variates), 0.0);
        s.scale.assign(static_cast<std::size_t>(ctx.variates), 1.0);
        if (!enabled) return s;
        for (int v = 0; v < ctx.variates; ++v) {
            double m = 0.0;
            for (int t = 0; t < ctx.steps; ++t) m += ctx.at(v, t);
            m /= ctx.steps;
            double var = 0.0;
            for (int t = 0; t < ctx.steps; ++t) {
                double d = ctx.at(v, t) - m;
                var += d * d;
            }
            var /= ctx.steps;
            s.mean[static_cast<std::size_t>(v)] = m;
            s.scale[static_cast<std::size_t>(v)] = var > 0.0 ? std::sqrt(var) : 1.0;
        }
        return s;
    }

    double encode(int v, double x) const {
        return (x - mean[static_cast<std::size_t>(v)]) / scale[static_cast<std::size_t>(v)];
    }
    double decode(int v, double z) const {
        return mean[static_cast<std::size_t>(v)] + scale[static_cast<std::size_t>(v)] * z;
    }
};

MetricRow score(const std::vector<Vec>& actual, const std::vector<Vec>& predicted,
                const std::vector<Vec>& insample, int seasonal_period) {
    MetricRow row;
    const int variates = static_cast<int>(actual.size());
    double acc_mse = 0.0, acc_mae = 0.0, acc_smape = 0.0, acc_mase = 0.0;
    bool smape_ok = true, mase_ok = true;
    for (int v = 0; v < variates; ++v) {
        acc_mse += mse(actual[v], predicted[v]);
        acc_mae += mae(actual[v], predicted[v]);
        try {
            acc_smape += smape(actual[v], predicted[v], /*skip_zero=*/true);
        } catch (const std::domain_error&) {
            smape_ok = false;
        }
        try {
            acc_mase += mase(actual[v], predicted[v], insample[v], seasonal_period);
        } catch (const std::domain_error&) {
            mase_ok = false;
        }
    }
    row.mse = acc_mse / variates;
    row.mae = acc_mae / variates;
    if (smape_ok) row.smape = acc_smape / variates;
    if (mase_ok) row.mase = acc_mase / variates;
    return row;
}

void fill_owa(MetricRow& row, const MetricRow& naive2) {
    if (row.smape && row.mase && naive2.smape && naive2.mase && *naive2.smape > 0.0 &&
        *naive2.mase > 0.0)
        row.owa = owa(*row.smape, *row.mase, *naive2.smape, *naive2.mase);
}

}  // namespace

ForecastReport run_forecast_model(const SeriesTensor& series, const ForecastTask& task,
                                  const ForecastModelConfig& cfg, const MetricConfig& metric_cfg,
                                  const std::string& source_desc) {
    if (series.dim != 1)
        throw std::invalid_argument("run_forecast_model: forecasting expects d_in == 1");
    cfg.gates.validate();
    auto [ctx, tgt] = split_task(series, task);
    const int variates = series.variates;
    const Standardizer std_ = Standardizer::fit(ctx, cfg.standardize);

    ProjectionConfig pcfg;
    pcfg.d_in = 1;
    pcfg.d_key = cfg.d_key;
    pcfg.d_val = cfg.d_val;
    pcfg.d_out = 1;
    pcfg.identity_init = true;
    auto proj_gp = init_projections(pcfg, 0);
    ProjectionSet& proj = proj_gp.first;     // named separately so the
    GateProjection& gp = proj_gp.second;     // column lambdas can capture them
    for (double& w : proj.w_out.data) w *= cfg.w_out_scale;
    gp.fixed = cfg.gates;

    SeriesTensor zctx(variates, task.context_len, 1);
    for (int v = 0; v < variates; ++v)
        for (int t = 0; t < task.context_len; ++t) zctx.at(v, t) = std_.encode(v, ctx.at(v, t));

    // Context pass: exact streaming by default, chunked when requested.
    GridFrontier frontier = GridFrontier::initial(variates, cfg.d_val, cfg.d_key);
    std::vector<GateBundle> col_gates(static_cast<std::size_t>(variates), cfg.gates);
    std::vector<Vec> col_keys(static_cast<std::size_t>(variates)),
        col_vals(static_cast<std::size_t>(variates));
    auto project_column = [&](const Vec& inputs) {
        for (int v = 0; v < variates; ++v) {
            KvqTriple kvq = project_kvq(proj, Vec{inputs[static_cast<std::size_t>(v)]});
            col_keys[static_cast<std::size_t>(v)] = std::move(kvq.key);
            col_vals[static_cast<std::size_t>(v)] = std::move(kvq.value);
        }
    };

    Vec last_inputs(static_cast<std::size_t>(variates));
    if (cfg.time_chunk > 1 || cfg.variate_chunk > 1) {
        GridTrajectory traj = run_grid_chunked(zctx, proj, gp,
                                               ChunkSpec2D{cfg.time_chunk, cfg.variate_chunk});
        for (int v = 0; v < variates; ++v) {
            frontier.h1log[static_cast<std::size_t>(v)] = traj.h1(v, task.context_len - 1);
            frontier.h2log[static_cast<std::size_t>(v)] = traj.h2(v, task.context_len - 1);
            frontier.h1lin[static_cast<std::size_t>(v)] =
                emap_exp(frontier.h1log[static_cast<std::size_t>(v)]);
            frontier.h2lin[static_cast<std::size_t>(v)] =
                emap_exp(frontier.h2log[static_cast<std::size_t>(v)]);
        }
        for (int v = 0; v < variates; ++v)
            last_inputs[static_cast<std::size_t>(v)] = zctx.at(v, task.context_len - 1);
    } else {
        for (int t = 0; t < task.context_len; ++t) {
            for (int v = 0; v < variates; ++v)
                last_inputs[static_cast<std::size_t>(v)] = zctx.at(v, t);
            project_column(last_inputs);
            advance_column(frontier, col_keys, col_vals, col_gates, cfg.conv);
        }
    }

    // Autoregressive rollout: each column's readout is the next column's input.
    auto read_column = [&](const Vec& inputs) {
        Vec out(static_cast<std::size_t>(variates));
        for (int v = 0; v < variates; ++v) {
            Vec q = matvec(proj.w_query, Vec{inputs[static_cast<std::size_t>(v)]});
            Vec o = matvec(proj.w_out, matvec(frontier.h1lin[static_cast<std::size_t>(v)], q));
            out[static_cast<std::size_t>(v)] = o[0];
        }
        return out;
    };

    SeriesTensor forecasts(variates, task.horizon, 1);
    Vec cur = read_column(last_inputs);
    for (int h = 0; h < task.horizon; ++h) {
        for (int v = 0; v < variates; ++v)
            forecasts.at(v, h) = std_.decode(v, cur[static_cast<std::size_t>(v)]);
        if (h + 1 < task.horizon) {
            project_column(cur);
            advance_column(frontier, col_keys, col_vals, col_gates, cfg.conv);
            cur = read_column(cur);
        }
    }

    // Score model and baselines against the target.
    std::vector<Vec> actual(static_cast<std::size_t>(variates)),
        model_pred(actual), pers_pred(actual), season_pred(actual), insample(actual);
    for (int v = 0; v < variates; ++v) {
        Vec a(static_cast<std::size_t>(task.horizon)), m(static_cast<std::size_t>(task.horizon));
        for (int h = 0; h < task.horizon; ++h) {
            a[static_cast<std::size_t>(h)] = tgt.at(v, h);
            m[static_cast<std::size_t>(h)] = forecasts.at(v, h);
        }
        Vec c(static_cast<std::size_t>(task.context_len));
        for (int t = 0; t < task.context_len; ++t) c[static_cast<std::size_t>(t)] = ctx.at(v, t);
        NaiveForecasts nf = naive_baselines(c, metric_cfg.seasonal_period, task.horizon);
        actual[static_cast<std::size_t>(v)] = std::move(a);
        model_pred[static_cast<std::size_t>(v)] = std::move(m);
        pers_pred[static_cast<std::size_t>(v)] = std::move(nf.persistence);
        season_pred[static_cast<std::size_t>(v)] = std::move(nf.seasonal_naive);
        insample[static_cast<std::size_t>(v)] = std::move(c);
    }

    ForecastReport report;
    report.model = score(actual, model_pred, insample, metric_cfg.seasonal_period);
    report.persistence = score(actual, pers_pred, insample, metric_cfg.seasonal_period);
    report.seasonal_naive = score(actual, season_pred, insample, metric_cfg.seasonal_period);
    fill_owa(report.model, report.seasonal_naive);
    fill_owa(report.persistence, report.seasonal_naive);
    fill_owa(report.seasonal_naive, report.seasonal_naive);
    report.forecasts = std::move(forecasts);
    report.variates = variates;
    report.context_len = task.context_len;
    report.horizon = task.horizon;
    report.seasonal_period = metric_cfg.seasonal_period;
    report.source = source_desc;

    std::ostringstream echo;
    echo << "source=" << source_desc << " variates=" << variates
         << " context=" << task.context_len << " horizon=" << task.horizon
         << " season=" << metric_cfg.seasonal_period << " anchor=" << to_string(cfg.conv)
         << " d_key=" << cfg.d_key << " d_val=" << cfg.d_val
         << " chunk_t=" << cfg.time_chunk << " chunk_v=" << cfg.variate_chunk
         << " standardize=" << (cfg.standardize ? 1 : 0) << " w_out=" << cfg.w_out_scale
         << " alpha=" << cfg.gates.alpha << " beta=" << cfg.gates.beta
         << " theta=" << cfg.gates.theta << " mu=" << cfg.gates.mu << " eta=" << cfg.gates.eta
         << " gamma=" << cfg.gates.gamma << " lambda=" << cfg.gates.lambda
         << " omega=" << cfg.gates.omega;
    report.config_echo = echo.str();
    return report;
}

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}
std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "n/a"; }
}  // namespace

std::string render_text(const ForecastReport& r) {
    std::ostringstream out;
    out << "forecast report (" << r.source << ")\n";
    out << "  " << r.config_echo << "\n";
    char line[160];
    std::snprintf(line, sizeof(line), "  %-16s %14s %14s %14s\n", "metric", "model",
                  "persistence", "seasonal-naive");
    out << line;
    auto row = [&](const char* name, auto get) {
        std::snprintf(line, sizeof(line), "  %-16s %14s %14s %14s\n", name,
                      get(r.model).c_str(), get(r.persistence).c_str(),
                      get(r.seasonal_naive).c_str());
        out << line;
    };
    row("mse", [](const MetricRow& m) { return fmt(m.mse); });
    row("mae", [](const MetricRow& m) { return fmt(m.mae); });
    row("smape", [](const MetricRow& m) { return fmt_opt(m.smape); });
    row("mase", [](const MetricRow& m) { return fmt_opt(m.mase); });
    row("owa", [](const MetricRow& m) { return fmt_opt(m.owa); });
    return out.str();
}

std::string render_csv(const ForecastReport& r) {
    std::ostringstream out;
    out << "# " << r.config_echo << "\n";
    out << "metric,model,persistence,seasonal_naive\n";
    auto cell = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    out << "mse," << fmt(r.model.mse) << "," << fmt(r.persistence.mse) << ","
        << fmt(r.seasonal_naive.mse) << "\n";
    out << "mae," << fmt(r.model.mae) << "," << fmt(r.persistence.mae) << ","
        << fmt(r.seasonal_naive.mae) << "\n";
    out << "smape," << cell(r.model.smape) << "," << cell(r.persistence.smape) << ","
        << cell(r.seasonal_naive.smape) << "\n";
    out << "mase," << cell(r.model.mase) << "," << cell(r.persistence.mase) << ","
        << cell(r.seasonal_naive.mase) << "\n";
    out << "owa," << cell(r.model.owa) << "," << cell(r.persistence.owa) << ","
        << cell(r.seasonal_naive.owa) << "\n";
    return out.str();
}

}  // namespace hydra
