#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lsys {

/// Seedable generator with a platform-independent output stream:
/// std::mt19937_64 is fully specified by the standard, and the conversions
/// to floating point below avoid the implementation-defined distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Exp(1) by inversion.
    double exponential() { return -std::log(uniform_open()); }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer over (seed, stream) for independent sub-seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace lsys
