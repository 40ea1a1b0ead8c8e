// SPDX-License-Identifier: Apache-2.0
#include "hydra/rng.hpp"

#include <cmath>

namespace hydra {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace

RngStream::RngStream(std::uint64_t seed) : state_(seed) {}

RngStream RngStream::for_variate(std::uint64_t seed, int variate) {
    std::uint64_t key = seed ^ (kGolden * (static_cast<std::uint64_t>(variate) + 1));
    return RngStream(mix(key + kGolden));
}

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix(state_);
}

double RngStream::uniform01() {
    // 53 high bits, offset by half an ulp so 0 and 1 are excluded.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double RngStream::gaussian() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace hydra
