// SPDX-License-Identifier: Apache-2.0
#include "hydra/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hydra/rng.hpp"

namespace hydra {

SeriesTensor::SeriesTensor(int v, int t, int d) {
    if (v <= 0 || t <= 0 || d <= 0) throw std::invalid_argument("SeriesTensor: non-positive shape");
    variates = v;
    steps = t;
    dim = d;
    values.assign(static_cast<std::size_t>(v) * t * d, 0.0);
}

double& SeriesTensor::at(int v, int t, int f) {
    return values[(static_cast<std::size_t>(v) * steps + t) * dim + f];
}

double SeriesTensor::at(int v, int t, int f) const {
    return values[(static_cast<std::size_t>(v) * steps + t) * dim + f];
}

Vec SeriesTensor::cell(int v, int t) const {
    Vec out(static_cast<std::size_t>(dim));
    for (int f = 0; f < dim; ++f) out[f] = at(v, t, f);
    return out;
}

int SarParams::burn_in() const { return std::max(p, q * s); }

void SarParams::validate() const {
    if (p < 0 || q < 0 || s < 1) throw std::invalid_argument("SarParams: p,q >= 0 and s >= 1 required");
    if (static_cast<int>(phi.size()) != p)
        throw std::invalid_argument("SarParams: phi must have length p");
    if (static_cast<int>(eta_seasonal.size()) != q)
        throw std::invalid_argument("SarParams: eta_seasonal must have length q");
    if (noise_std < 0.0) throw std::invalid_argument("SarParams: noise_std must be nonnegative");
    if (!deterministic_init.empty() &&
        static_cast<int>(deterministic_init.size()) != burn_in())
        throw std::invalid_argument("SarParams: deterministic_init must have length max(p, q*s)");
}

namespace {

std::runtime_error parse_error(const std::string& path, int line, const std::string& what) {
    return std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

SeriesTensor load_csv(const std::string& path, bool skip_time_col) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw parse_error(path, 1, "empty file");
    ++lineno;

    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cur;
        std::stringstream ss(s);
        while (std::getline(ss, cur, ',')) cells.push_back(cur);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };

    const std::size_t header_cols = split(line).size();
    const std::size_t first_value_col = skip_time_col ? 1 : 0;
    if (header_cols <= first_value_col)
        throw parse_error(path, 1, "no value columns in header");
    const int n_variates = static_cast<int>(header_cols - first_value_col);

    std::vector<std::vector<double>> columns(n_variates);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() && in.eof()) break;
        auto cells = split(line);
        if (cells.size() != header_cols)
            throw parse_error(path, lineno, "expected " + std::to_string(header_cols) +
                                                " cells, got " + std::to_string(cells.size()));
        for (int v = 0; v < n_variates; ++v) {
            const std::string& cell = cells[first_value_col + v];
            std::size_t consumed = 0;
            double val = 0.0;
            try {
                val = std::stod(cell, &consumed);
            } catch (const std::exception&) {
                throw parse_error(path, lineno, "non-numeric cell '" + cell + "'");
            }
            while (consumed < cell.size() && std::isspace(static_cast<unsigned char>(cell[consumed])))
                ++consumed;
            if (consumed != cell.size())
                throw parse_error(path, lineno, "non-numeric cell '" + cell + "'");
            if (!std::isfinite(val)) throw parse_error(path, lineno, "non-finite value");
            columns[v].push_back(val);
        }
    }
    if (columns.empty() || columns[0].empty()) throw parse_error(path, lineno, "no data rows");

    SeriesTensor x(n_variates, static_cast<int>(columns[0].size()), 1);
    for (int v = 0; v < n_variates; ++v)
        for (int t = 0; t < x.steps; ++t) x.at(v, t) = columns[v][t];
    return x;
}

void write_csv(const SeriesTensor& x, const std::string& path, bool with_time_col) {
    if (x.dim != 1) throw std::invalid_argument("write_csv: only d_in == 1 series are written");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    if (with_time_col) out << "time";
    for (int v = 0; v < x.variates; ++v) {
        if (with_time_col || v > 0) out << ",";
        out << "v" << v + 1;
    }
    out << "\n";
    char buf[40];
    for (int t = 0; t < x.steps; ++t) {
        if (with_time_col) out << t + 1;
        for (int v = 0; v < x.variates; ++v) {
            if (with_time_col || v > 0) out << ",";
            std::snprintf(buf, sizeof(buf), "%.17g", x.at(v, t));
            out << buf;
        }
        out << "\n";
    }
}

SeriesTensor generate_sar(const SarParams& params, int variates, int steps) {
    params.validate();
    const int burn = params.burn_in();
    if (steps <= burn)
        throw std::invalid_argument("generate_sar: steps must exceed burn-in max(p, q*s) = " +
                                    std::to_string(burn));
    SeriesTensor x(variates, steps, 1);
    for (int v = 0; v < variates; ++v) {
        RngStream rng = RngStream::for_variate(params.seed, v);
        for (int k = 0; k < steps; ++k) {
            double val;
            if (k < burn) {
                val = params.deterministic_init.empty()
                          ? params.noise_std * rng.gaussian()
                          : params.deterministic_init[static_cast<std::size_t>(k)];
            } else {
                val = 0.0;
                for (int i = 0; i < params.p; ++i) val += params.phi[i] * x.at(v, k - 1 - i);
                for (int j = 0; j < params.q; ++j)
                    val += params.eta_seasonal[j] * x.at(v, k - (j + 1) * params.s);
                if (params.noise_std > 0.0) val += params.noise_std * rng.gaussian();
            }
            if (std::fabs(val) > 1e12)
                throw std::runtime_error("generate_sar: unstable parameterization, |x| > 1e12 at variate " +
                                         std::to_string(v + 1) + " step " + std::to_string(k + 1));
            x.at(v, k) = val;
        }
    }
    return x;
}

std::pair<SeriesTensor, SeriesTensor> split_task(const SeriesTensor& x, const ForecastTask& task) {
    if (task.context_len <= 0 || task.horizon <= 0)
        throw std::invalid_argument("split_task: context_len and horizon must be positive");
    if (task.context_len + task.horizon > x.steps)
        throw std::invalid_argument("split_task: context_len + horizon exceeds series length");
    SeriesTensor ctx(x.variates, task.context_len, x.dim);
    SeriesTensor tgt(x.variates, task.horizon, x.dim);
    const int ctx_start = x.steps - task.horizon - task.context_len;
    for (int v = 0; v < x.variates; ++v) {
        for (int t = 0; t < task.context_len; ++t)
            for (int f = 0; f < x.dim; ++f) ctx.at(v, t, f) = x.at(v, ctx_start + t, f);
        for (int t = 0; t < task.horizon; ++t)
            for (int f = 0; f < x.dim; ++f) tgt.at(v, t, f) = x.at(v, x.steps - task.horizon + t, f);
    }
    return {std::move(ctx), std::move(tgt)};
}

}  // namespace hydra
