#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mscn {

/// Seedable generator wrapping std::mt19937_64 with hand-rolled
/// distributions, so that streams are bit-reproducible independent of the
/// standard library's distribution implementations.
///
/// Stream-splitting rule: substream(tag) derives an independent generator
/// from the *root* seed and the tag via splitmix64 mixing; it does not
/// depend on how many draws were consumed. Each purpose (one mixture
/// component, the outlier-index selection, ...) takes its own tag.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

    Rng substream(std::uint64_t tag) const { return Rng(mix(seed_ ^ mix(tag + 0x51ed2701))); }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes exactly two raw draws.
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = next_u64();
        while (x >= bound) x = next_u64();
        return x % n;
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace mscn
