// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace hydra {

/// SplitMix64-based stream generator. Counter-style state advance, so draws
/// are bitwise reproducible across platforms and independent per stream key.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    /// Substream for one variate: seed XORed with a scrambled variate index,
    /// so adding variates never perturbs existing ones.
    static RngStream for_variate(std::uint64_t seed, int variate);

    std::uint64_t next_u64();

    /// Uniform draw strictly inside (0, 1).
    double uniform01();

    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller (two uniforms per draw).
    double gaussian();

private:
    std::uint64_t state_;
};

}  // namespace hydra
