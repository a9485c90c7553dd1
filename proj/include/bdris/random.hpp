// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace bdris {

/// SplitMix64-style avalanche of a (seed, index) pair into one engine key.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seeded random stream with explicit substream derivation. Every Monte Carlo
// trial t draws from substream(master_seed, t), so trials are reproducible
// and independent of evaluation order or parallel schedule. Uniform and
// Gaussian variates are generated here rather than with <random>
// distributions, whose algorithms are implementation-defined; this keeps
// outputs identical for a fixed seed on any conforming platform.
class RngStream
{
  public:
    /// Construct from a raw engine key. Prefer substream() for derived streams.
    explicit RngStream(std::uint64_t key) : gen_(key) {}

    static RngStream substream(std::uint64_t seed, std::uint64_t index)
    {
        return RngStream(mix64(seed, index));
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform phase in [0, 2*pi).
    double uniform_phase() { return 2.0 * M_PI * uniform(); }

    /// Circularly-symmetric complex Gaussian, zero mean, unit variance
    /// (real and imaginary parts each have variance 1/2). Box-Muller.
    std::complex<double> complex_normal()
    {
        double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        double u2 = uniform();
        double radius = std::sqrt(-std::log(u1));
        return std::polar(radius, 2.0 * M_PI * u2);
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace bdris
