// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "hydra/mat.hpp"

namespace hydra {

/// Key/value/query input projections plus the readout projection.
struct ProjectionSet {
    Mat w_key;    // d_key x d_in
    Mat w_val;    // d_val x d_in
    Mat w_query;  // d_key x d_in
    Mat w_out;    // d_out x d_val
};

struct KvqTriple {
    Vec key;
    Vec value;
    Vec query;
};

/// Per-cell gate scalars. Retention gates live in [0,1], rate gates are >= 0.
/// The 1D model uses (alpha, eta) with the other six at zero.
struct GateBundle {
    double alpha = 1.0;   // head-1 retention of its previous-time state
    double beta = 0.0;    // head-1 retention of head-2's previous-time state
    double theta = 0.0;   // head-2 retention of head-1's previous-variate state
    double mu = 0.0;      // head-2 retention of its previous-variate state
    double eta = 0.0;     // rates paired with the retention terms above
    double gamma = 0.0;
    double lambda = 0.0;
    double omega = 0.0;

    void validate() const;
};

struct GatePair {
    Vec weight;  // length d_in
    double bias = 0.0;
};

/// Linear gate maps, one weight/bias pair per gate. Retention gates are
/// squashed through a logistic, rate gates through softplus, so the
/// GateBundle ranges hold for any finite input. When `fixed` is set the
/// projections are bypassed entirely.
struct GateProjection {
    GatePair alpha, beta, theta, mu;
    GatePair eta, gamma, lambda, omega;
    std::optional<GateBundle> fixed;
};

KvqTriple project_kvq(const ProjectionSet& p, const Vec& x);

GateBundle compute_gates(const GateProjection& gp, const Vec& x);

struct ProjectionConfig {
    int d_in = 1;
    int d_key = 1;
    int d_val = 1;
    int d_out = 1;
    /// Golden-example mode: w_key = w_query = I, w_val = 2I, w_out = I,
    /// zero gate weights with `gate_bias` on every gate.
    bool identity_init = false;
    double gate_bias = 0.0;
};

/// Random init draws every weight uniformly from [-1/sqrt(d_in), 1/sqrt(d_in)],
/// deterministic given the seed.
std::pair<ProjectionSet, GateProjection> init_projections(const ProjectionConfig& cfg,
                                                          std::uint64_t seed);

/// Plain-text key=value dump of all projection and gate weights.
std::string dump_weights(const ProjectionSet& p, const GateProjection& gp);

double logistic(double x);
double softplus(double x);

}  // namespace hydra
