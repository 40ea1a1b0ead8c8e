// SPDX-License-Identifier: Apache-2.0
#include "hydra/projection.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "hydra/rng.hpp"

namespace hydra {

void GateBundle::validate() const {
    auto in_unit = [](double g) { return g >= 0.0 && g <= 1.0; };
    if (!in_unit(alpha) || !in_unit(beta) || !in_unit(theta) || !in_unit(mu))
        throw std::invalid_argument("GateBundle: retention gates must lie in [0,1]");
    if (eta < 0.0 || gamma < 0.0 || lambda < 0.0 || omega < 0.0)
        throw std::invalid_argument("GateBundle: rate gates must be nonnegative");
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double softplus(double x) {
    if (x > 30.0) return x;  // log1p(exp(x)) == x to double precision
    return std::log1p(std::exp(x));
}

KvqTriple project_kvq(const ProjectionSet& p, const Vec& x) {
    return {matvec(p.w_key, x), matvec(p.w_val, x), matvec(p.w_query, x)};
}

namespace {
double gate_raw(const GatePair& g, const Vec& x) {
    if (g.weight.size() != x.size())
        throw std::invalid_argument("compute_gates: weight length does not match input");
    double acc = g.bias;
    for (std::size_t i = 0; i < x.size(); ++i) acc += g.weight[i] * x[i];
    return acc;
}
}  // namespace

GateBundle compute_gates(const GateProjection& gp, const Vec& x) {
    if (gp.fixed) {
        gp.fixed->validate();
        return *gp.fixed;
    }
    GateBundle out;
    out.alpha = logistic(gate_raw(gp.alpha, x));
    out.beta = logistic(gate_raw(gp.beta, x));
    out.theta = logistic(gate_raw(gp.theta, x));
    out.mu = logistic(gate_raw(gp.mu, x));
    out.eta = softplus(gate_raw(gp.eta, x));
    out.gamma = softplus(gate_raw(gp.gamma, x));
    out.lambda = softplus(gate_raw(gp.lambda, x));
    out.omega = softplus(gate_raw(gp.omega, x));
    return out;
}

namespace {

Mat near_identity(int rows, int cols, double scale) {
    Mat m(rows, cols, 0.0);
    const int n = rows < cols ? rows : cols;
    for (int i = 0; i < n; ++i) m(i, i) = scale;
    return m;
}

Mat random_mat(int rows, int cols, double bound, RngStream& rng) {
    Mat m(rows, cols);
    for (double& v : m.data) v = rng.uniform(-bound, bound);
    return m;
}

}  // namespace

std::string dump_weights(const ProjectionSet& p, const GateProjection& gp) {
    std::string out;
    char buf[64];
    auto mat = [&](const char* name, const Mat& m) {
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) {
                std::snprintf(buf, sizeof(buf), "%s[%d][%d]=%.17g\n", name, r, c, m(r, c));
                out += buf;
            }
    };
    mat("w_key", p.w_key);
    mat("w_val", p.w_val);
    mat("w_query", p.w_query);
    mat("w_out", p.w_out);
    const GatePair* gates[8] = {&gp.alpha, &gp.beta, &gp.theta, &gp.mu,
                                &gp.eta,   &gp.gamma, &gp.lambda, &gp.omega};
    const char* names[8] = {"alpha", "beta", "theta", "mu", "eta", "gamma", "lambda", "omega"};
    for (int i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < gates[i]->weight.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "gate_%s.w[%zu]=%.17g\n", names[i], j,
                          gates[i]->weight[j]);
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), "gate_%s.b=%.17g\n", names[i], gates[i]->bias);
        out += buf;
    }
    return out;
}

std::pair<ProjectionSet, GateProjection> init_projections(const ProjectionConfig& cfg,
                                                          std::uint64_t seed) {
    if (cfg.d_in <= 0 || cfg.d_key <= 0 || cfg.d_val <= 0 || cfg.d_out <= 0)
        throw std::invalid_argument("init_projections: dims must be positive");

    ProjectionSet p;
    GateProjection gp;
    GatePair* gates[8] = {&gp.alpha, &gp.beta, &gp.theta, &gp.mu,
                          &gp.eta,   &gp.gamma, &gp.lambda, &gp.omega};

    if (cfg.identity_init) {
        p.w_key = near_identity(cfg.d_key, cfg.d_in, 1.0);
        p.w_query = near_identity(cfg.d_key, cfg.d_in, 1.0);
        p.w_val = near_identity(cfg.d_val, cfg.d_in, 2.0);
        p.w_out = near_identity(cfg.d_out, cfg.d_val, 1.0);
        for (GatePair* g : gates) {
            g->weight.assign(static_cast<std::size_t>(cfg.d_in), 0.0);
            g->bias = cfg.gate_bias;
        }
        return {p, gp};
    }

    RngStream rng(seed);
    const double bound = 1.0 / std::sqrt(static_cast<double>(cfg.d_in));
    p.w_key = random_mat(cfg.d_key, cfg.d_in, bound, rng);
    p.w_val = random_mat(cfg.d_val, cfg.d_in, bound, rng);
    p.w_query = random_mat(cfg.d_key, cfg.d_in, bound, rng);
    p.w_out = random_mat(cfg.d_out, cfg.d_val, bound, rng);
    for (GatePair* g : gates) {
        g->weight.resize(static_cast<std::size_t>(cfg.d_in));
        for (double& w : g->weight) w = rng.uniform(-bound, bound);
        g->bias = cfg.gate_bias;
    }
    return {p, gp};
}

}  // namespace hydra
