// SPDX-License-Identifier: Apache-2.0
//
// hydra CLI: golden | equiv | gradcheck | bench | forecast
// Exit codes: 0 pass, 1 assertion failure, 2 usage or input error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydra/bench.hpp"
#include "hydra/chunked1d.hpp"
#include "hydra/chunked2d.hpp"
#include "hydra/equiv.hpp"
#include "hydra/forecast.hpp"
#include "hydra/grid.hpp"
#include "hydra/metrics.hpp"
#include "hydra/rng.hpp"
#include "hydra/series.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output path " + out_path);
        out << text;
        std::cout << text;
    }
}

// ---------------------------------------------------------------------------
// golden: the 3x6 worked reference grid with fixed gates and scalar
// projections k = x, v = 2x. Verifies the 36 final linear entries and the
// eight intermediate head-1 log values.
// ---------------------------------------------------------------------------

int cmd_golden(double tol, const std::string& anchor, const std::string& out_path) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    const int variates = 3, steps = 6;
    hydra::SeriesTensor x(variates, steps, 1);
    for (int v = 0; v < variates; ++v)
        for (int t = 0; t < steps; ++t) x.at(v, t) = v + t + 1;

    hydra::ProjectionConfig pcfg;
    pcfg.identity_init = true;
    auto [proj, gp] = hydra::init_projections(pcfg, 0);
    gp.fixed = hydra::GateBundle{0.5, 0.5, 0.5, 0.5, 0.01, 0.01, 0.01, 0.01};

    const hydra::AnchorConvention conv = hydra::anchor_from_string(anchor);
    hydra::GridTrajectory traj = hydra::run_grid(x, proj, gp, conv);

    static const double expected_h1[3][6] = {
        {1.020, 1.103, 1.286, 1.574, 1.890, 2.100},
        {1.083, 1.288, 1.617, 1.949, 2.058, 2.077},
        {1.197, 1.590, 1.957, 2.026, 2.020, 2.023}};
    static const double expected_h2[3][6] = {
        {1.020, 1.082, 1.177, 1.279, 1.332, 1.323},
        {1.105, 1.286, 1.546, 1.749, 1.769, 1.814},
        {1.310, 1.634, 1.919, 1.930, 1.949, 1.979}};
    struct Anchor {
        int v, t;
        double value;
    };
    static const Anchor log_anchors[8] = {{0, 0, 0.02000}, {0, 1, 0.09838}, {0, 2, 0.25174},
                                          {0, 3, 0.45335}, {0, 4, 0.63652}, {0, 5, 0.74172},
                                          {1, 0, 0.08000}, {1, 1, 0.25304}};
    const double anchor_tol = tol * 1e-2;  // 5e-3 entries -> 5e-5 log anchors

    std::ostringstream report;
    std::ostringstream failures;
    int n_fail = 0;
    auto check = [&](const char* what, int v, int t, double got, double want, double tolerance) {
        if (std::fabs(got - want) > tolerance) {
            ++n_fail;
            char line[160];
            std::snprintf(line, sizeof(line),
                          "  MISMATCH %s (v=%d,t=%d): got %.6f, expected %.6f, |diff| %.2e > %.0e\n",
                          what, v + 1, t + 1, got, want, std::fabs(got - want), tolerance);
            failures << line;
        }
    };

    for (const char* head : {"head1", "head2"}) {
        const bool first = head[4] == '1';
        report << "final " << head << " (linear domain):\n";
        for (int v = 0; v < variates; ++v) {
            report << " ";
            for (int t = 0; t < steps; ++t) {
                const hydra::Mat lin = hydra::emap_exp(first ? traj.h1(v, t) : traj.h2(v, t));
                const double got = lin(0, 0);
                const double want = first ? expected_h1[v][t] : expected_h2[v][t];
                check(head, v, t, got, want, tol);
                char cell[16];
                std::snprintf(cell, sizeof(cell), " %.3f", got);
                report << cell;
            }
            report << "\n";
        }
    }
    for (const Anchor& a : log_anchors)
        check("head1 log anchor", a.v, a.t, traj.h1(a.v, a.t)(0, 0), a.value, anchor_tol);

    const double elapsed =
        std::chrono::duration<double>(clock::now() - start).count();
    char tail[160];
    std::snprintf(tail, sizeof(tail),
                  "golden check: anchor=%s tol=%.0e: %s (%d mismatches, %.3fs)\n", anchor.c_str(),
                  tol, n_fail == 0 ? "pass" : "FAIL", n_fail, elapsed);
    report << failures.str() << tail;
    emit(report.str(), out_path);
    return n_fail == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// equiv: oracle-equivalence, closed-form, superposition and reduction sweeps,
// plus an informational chunk-size gap sweep on seeded SAR data.
// ---------------------------------------------------------------------------

std::string gap_sweep_tables(std::uint64_t seed) {
    hydra::SarParams params;
    params.p = 1;
    params.q = 1;
    params.s = 4;
    params.phi = {0.6};
    params.eta_seasonal = {0.2};
    params.noise_std = 0.3;
    params.seed = seed;
    const int variates = 4, steps = 32;
    const hydra::SeriesTensor series = hydra::generate_sar(params, variates, steps);

    hydra::ProjectionConfig pcfg;
    pcfg.identity_init = true;
    auto [proj, gp] = hydra::init_projections(pcfg, 0);
    gp.fixed = hydra::GateBundle{0.9, 0.3, 0.4, 0.8, 0.05, 0.05, 0.05, 0.05};

    std::ostringstream out;
    char line[120];
    out << "approximation gap vs chunk size (seeded SAR data, reported only):\n  1d:";
    std::vector<hydra::Vec> keys, vals;
    std::vector<hydra::Gate1D> gates;
    for (int t = 0; t < steps; ++t) {
        const double x = series.at(0, t);
        keys.push_back({x});
        vals.push_back({2.0 * x});
        gates.push_back(hydra::Gate1D{0.9, 0.05});
    }
    for (int b : {1, 2, 4, 8, steps}) {
        std::snprintf(line, sizeof(line), "  b=%-2d %.3e", b,
                      hydra::approximation_gap(keys, vals, gates, b));
        out << line;
    }
    out << "\n  2d:";
    for (int b : {1, 2, 4, 8}) {
        std::snprintf(line, sizeof(line), "  b_t=%-2d %.3e", b,
                      hydra::approximation_gap_2d(series, proj, gp, hydra::ChunkSpec2D{b, 1}));
        out << line;
    }
    out << "\n";
    return out.str();
}

int cmd_equiv(const hydra::equiv::EquivConfig& cfg, const std::string& out_path) {
    auto results = hydra::equiv::run_all(cfg);
    std::ostringstream report;
    report << "equivalence sweeps: trials=" << cfg.trials << " seed=" << cfg.seed
           << " max_t=" << cfg.max_steps << " max_v=" << cfg.max_variates
           << " max_d=" << cfg.max_dim << (cfg.inject_fault ? " [fault injected]" : "") << "\n";
    report << hydra::equiv::render_text(results);
    report << gap_sweep_tables(cfg.seed);
    const bool ok = hydra::equiv::all_passed(results);
    report << (ok ? "equiv: pass\n" : "equiv: FAIL\n");
    emit(report.str(), out_path);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gradcheck: analytic gradient vs central finite differences of the
// half-squared retrieval error, entrywise over the linear-domain memory.
// ---------------------------------------------------------------------------

int cmd_gradcheck(int trials, int dim, double tol, std::uint64_t seed,
                  const std::string& out_path) {
    hydra::RngStream rng(seed);
    const double h = 1e-5;
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        const int d_key = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim));
        const int d_val = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim));
        hydra::Mat m(d_val, d_key);
        for (double& e : m.data) e = rng.uniform(0.2, 2.0);
        hydra::Vec key(static_cast<std::size_t>(d_key)), val(static_cast<std::size_t>(d_val));
        for (double& e : key) e = rng.uniform(-1.0, 1.0);
        for (double& e : val) e = rng.uniform(-1.0, 1.0);

        const hydra::Mat analytic = hydra::grad(m, key, val);

        // Plain-loop half-squared error, independent of the library path.
        auto half_loss = [&](const hydra::Mat& mm) {
            double acc = 0.0;
            for (int a = 0; a < d_val; ++a) {
                double pred = 0.0;
                for (int b = 0; b < d_key; ++b) pred += mm(a, b) * key[static_cast<std::size_t>(b)];
                const double r = pred - val[static_cast<std::size_t>(a)];
                acc += 0.5 * r * r;
            }
            return acc;
        };
        for (int a = 0; a < d_val; ++a) {
            for (int b = 0; b < d_key; ++b) {
                hydra::Mat mp = m, mm_ = m;
                mp(a, b) += h;
                mm_(a, b) -= h;
                const double fd = (half_loss(mp) - half_loss(mm_)) / (2.0 * h);
                const double ref = analytic(a, b);
                const double rel = std::fabs(ref - fd) / std::max(std::fabs(ref) + std::fabs(fd), 1e-3);
                worst = std::max(worst, rel);
            }
        }
    }
    std::ostringstream report;
    char line[160];
    std::snprintf(line, sizeof(line),
                  "gradcheck: trials=%d dim<=%d h=%.0e max_rel_err=%.3e tol=%.0e: %s\n", trials,
                  dim, h, worst, tol, worst <= tol ? "pass" : "FAIL");
    report << line;
    emit(report.str(), out_path);
    return worst <= tol ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench: exact per-step recurrence vs chunked evaluation, wall-clock medians.
// ---------------------------------------------------------------------------

int cmd_bench(const hydra::bench::BenchConfig& cfg, bool csv, const std::string& out_path) {
    const hydra::bench::BenchResult r = hydra::bench::run(cfg);
    emit(csv ? hydra::bench::render_csv(cfg, r) : hydra::bench::render_text(cfg, r), out_path);
    return 0;  // reporting tool
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hydra: dual-memory 2D recurrence toolkit"};
    app.require_subcommand(1);

    // Shared option storage.
    double tol = 5e-3;
    std::string anchor = "prev_time_both";
    std::string out_path;
    std::uint64_t seed = 7;
    bool csv = false;

    // golden
    CLI::App* golden = app.add_subcommand("golden", "verify the 3x6 worked reference grid");
    golden->add_option("--tol", tol, "per-entry tolerance for the final matrices")
        ->default_val(5e-3);
    golden->add_option("--anchor", anchor, "prev_time_both|per_head_predecessor")
        ->default_val("prev_time_both");
    golden->add_option("--out", out_path, "also write the report to this path");

    // equiv
    hydra::equiv::EquivConfig ecfg;
    CLI::App* equiv = app.add_subcommand("equiv", "oracle equivalence and closed-form sweeps");
    equiv->add_option("--trials", ecfg.trials)->default_val(100);
    equiv->add_option("--seed", ecfg.seed)->default_val(7);
    equiv->add_option("--max-t", ecfg.max_steps)->default_val(64);
    equiv->add_option("--max-v", ecfg.max_variates)->default_val(6);
    equiv->add_option("--max-d", ecfg.max_dim)->default_val(8);
    equiv->add_flag("--inject-fault", ecfg.inject_fault,
                    "test-only sign flip proving the harness detects regressions");
    equiv->add_option("--tol", ecfg.tol_override, "override every suite tolerance");
    equiv->add_option("--out", out_path, "also write the report to this path");

    // gradcheck
    int gc_trials = 100, gc_dim = 4;
    double gc_tol = 1e-5;
    CLI::App* gradcheck =
        app.add_subcommand("gradcheck", "analytic gradient vs central finite differences");
    gradcheck->add_option("--trials", gc_trials)->default_val(100);
    gradcheck->add_option("--dim", gc_dim)->default_val(4)->check(CLI::Range(1, 8));
    gradcheck->add_option("--tol", gc_tol)->default_val(1e-5);
    gradcheck->add_option("--seed", seed)->default_val(7);
    gradcheck->add_option("--out", out_path, "also write the report to this path");

    // bench
    hydra::bench::BenchConfig bcfg;
    CLI::App* bench = app.add_subcommand("bench", "exact vs chunked throughput");
    bench->add_option("--t", bcfg.steps)->default_val(4096);
    bench->add_option("--v", bcfg.variates)->default_val(8);
    bench->add_option("--dim", bcfg.dim)->default_val(64);
    bench->add_option("--chunk-t", bcfg.time_chunk)->default_val(64);
    bench->add_option("--reps", bcfg.reps)->default_val(3);
    bench->add_option("--seed", bcfg.seed)->default_val(1);
    bench->add_flag("--csv", csv, "machine-readable output");
    bench->add_option("--out", out_path, "also write the report to this path");

    // forecast
    std::string input_csv;
    std::string synthetic;
    int sar_p = 2, sar_q = 1, sar_s = 12;
    std::vector<double> sar_phi{0.6, 0.2};
    std::vector<double> sar_eta{0.15};
    double noise_std = 0.1;
    int variates = 4, context_len = 96, horizon = 24;
    bool time_col = false;
    hydra::ForecastModelConfig mcfg;
    CLI::App* forecast = app.add_subcommand("forecast", "synthetic or CSV forecasting run");
    forecast->add_option("--input", input_csv, "wide CSV input path");
    forecast->add_option("--synthetic", synthetic, "synthetic generator name (sar)");
    forecast->add_option("--p", sar_p)->default_val(2);
    forecast->add_option("--q", sar_q)->default_val(1);
    forecast->add_option("--s", sar_s, "seasonal period (generator and metrics)")->default_val(12);
    forecast->add_option("--phi", sar_phi, "non-seasonal coefficients")->delimiter(',');
    forecast->add_option("--eta-seasonal", sar_eta, "seasonal coefficients")->delimiter(',');
    forecast->add_option("--noise-std", noise_std)->default_val(0.1);
    forecast->add_option("--variates", variates)->default_val(4);
    forecast->add_option("--context", context_len)->default_val(96);
    forecast->add_option("--horizon", horizon)->default_val(24);
    forecast->add_option("--seed", seed)->default_val(42);
    forecast->add_option("--chunk-t", mcfg.time_chunk)->default_val(1);
    forecast->add_option("--chunk-v", mcfg.variate_chunk)->default_val(1);
    forecast->add_option("--anchor", anchor)->default_val("prev_time_both");
    forecast->add_flag("--time-col", time_col, "skip a leading time column in the CSV");
    forecast->add_flag("--csv", csv, "machine-readable output");
    forecast->add_option("--out", out_path, "also write the report to this path");
    forecast->add_option("--alpha", mcfg.gates.alpha)->default_val(0.99);
    forecast->add_option("--beta", mcfg.gates.beta)->default_val(0.01);
    forecast->add_option("--theta", mcfg.gates.theta)->default_val(0.5);
    forecast->add_option("--mu", mcfg.gates.mu)->default_val(0.5);
    forecast->add_option("--eta", mcfg.gates.eta)->default_val(0.05);
    forecast->add_option("--gamma", mcfg.gates.gamma)->default_val(0.0);
    forecast->add_option("--lambda", mcfg.gates.lambda)->default_val(0.05);
    forecast->add_option("--omega", mcfg.gates.omega)->default_val(0.05);
    forecast->add_option("--w-out", mcfg.w_out_scale)->default_val(0.485);
    bool no_standardize = false;
    forecast->add_flag("--no-standardize", no_standardize,
                       "feed raw values instead of per-variate standardized ones");
    std::string dump_weights_path;
    forecast->add_option("--dump-weights", dump_weights_path,
                         "write the effective projection/gate weights as key=value text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (golden->parsed()) return cmd_golden(tol, anchor, out_path);
        if (equiv->parsed()) return cmd_equiv(ecfg, out_path);
        if (gradcheck->parsed()) return cmd_gradcheck(gc_trials, gc_dim, gc_tol, seed, out_path);
        if (bench->parsed()) return cmd_bench(bcfg, csv, out_path);

        // forecast
        if (input_csv.empty() && synthetic.empty()) {
            std::cerr << "forecast: pass --input <csv> or --synthetic sar\n";
            return 2;
        }
        if (!synthetic.empty() && synthetic != "sar") {
            std::cerr << "forecast: unknown synthetic source '" << synthetic << "'\n";
            return 2;
        }
        hydra::SeriesTensor series;
        std::string source;
        if (!input_csv.empty()) {
            series = hydra::load_csv(input_csv, time_col);
            source = "csv:" + input_csv;
        } else {
            hydra::SarParams params;
            params.p = sar_p;
            params.q = sar_q;
            params.s = sar_s;
            params.phi = sar_phi;
            params.eta_seasonal = sar_eta;
            params.noise_std = noise_std;
            params.seed = seed;
            series = hydra::generate_sar(params, variates, context_len + horizon);
            std::ostringstream src;
            src << "sar(p=" << sar_p << ",q=" << sar_q << ",s=" << sar_s
                << ",noise=" << noise_std << ",seed=" << seed << ")";
            source = src.str();
        }
        mcfg.conv = hydra::anchor_from_string(anchor);
        mcfg.standardize = !no_standardize;
        hydra::MetricConfig metric_cfg{sar_s, horizon};
        if (!input_csv.empty() && !forecast->count("--s")) metric_cfg.seasonal_period = 1;
        hydra::ForecastReport report = hydra::run_forecast_model(
            series, hydra::ForecastTask{context_len, horizon}, mcfg, metric_cfg, source);
        emit(csv ? hydra::render_csv(report) : hydra::render_text(report), out_path);
        if (!dump_weights_path.empty()) {
            // Rebuild the forecaster's effective weights for the dump.
            hydra::ProjectionConfig pcfg;
            pcfg.d_key = mcfg.d_key;
            pcfg.d_val = mcfg.d_val;
            pcfg.identity_init = true;
            auto [proj, gp] = hydra::init_projections(pcfg, 0);
            for (double& w : proj.w_out.data) w *= mcfg.w_out_scale;
            gp.fixed = mcfg.gates;
            std::ofstream dump(dump_weights_path);
            if (!dump) throw std::runtime_error("cannot open " + dump_weights_path);
            dump << hydra::dump_weights(proj, gp);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
