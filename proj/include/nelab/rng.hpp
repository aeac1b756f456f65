#pragma once

#include <cstdint>

#include "nelab/scalar.hpp"

namespace nelab {

/// Deterministic per-sample random stream. Each (seed, index) pair yields an
/// independent stream, so sample i's data never depends on which worker ran
/// it. Uniforms come straight from SplitMix64 output bits; normals use
/// Box-Muller, which keeps the values identical across standard libraries.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : state_(seed) {}

    static SampleRng for_sample(std::uint64_t seed, std::uint64_t index) {
        // Golden-ratio stride decorrelates consecutive sample indices.
        return SampleRng(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double uniform_signed() { return 2.0 * uniform() - 1.0; }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    Scalar normal_scalar(Field field) {
        const double re = normal();
        if (field == Field::real) return Scalar(re, 0.0);
        return Scalar(re, normal());
    }

private:
    std::uint64_t state_;
};

}  // namespace nelab
