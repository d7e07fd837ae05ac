#pragma once

#include <cstdint>

namespace wheelep {

/// xorshift64* generator. State is seeded through one splitmix64 step so
/// that seed 0 is usable:
///
///   z = seed + 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   state = z ^ (z >> 31)            (replaced by 1 if it is 0)
///
/// next():  x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * 0x2545F4914F6CDD1D
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed);

    std::uint64_t next();
    /// Top 53 bits scaled to [0, 1).
    double uniform();
    /// Uniform in [0, n) by rejection of the biased low range; n > 0.
    std::uint64_t below(std::uint64_t n);

private:
    std::uint64_t state_;
};

}  // namespace wheelep
