#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace invlindley {

/// Seedable 64-bit generator with a fixed stream-splitting rule.
///
/// Stream `k` of seed `s` is a Mersenne Twister (mt19937_64) keyed by
/// splitmix64(s ^ k). Uniforms are built from the raw 64-bit output, so the
/// sequence is identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(splitmix64(seed ^ stream)) {}

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Exponential with the given rate.
    double exponential(double rate) { return -std::log(uniform()) / rate; }

    static constexpr std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace invlindley
