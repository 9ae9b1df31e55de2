#pragma once

#include <cstdint>
#include <random>

namespace d2d {

using Rng = std::mt19937_64;

// The std:: distributions are implementation-defined, so the samplers below
// are written out to keep realizations bit-identical across standard libraries.

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Standard normal via Box-Muller; consumes exactly two engine outputs.
double standard_normal(Rng& rng);

/// Exponential with unit mean.
double unit_exponential(Rng& rng);

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Seed of stream `index` under `master`: mix64(master + (index + 1) * 0x9E3779B97F4A7C15).
/// Distinct indices never collide for a fixed master because both steps are bijections.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace d2d
