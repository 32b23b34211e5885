#pragma once

#include <cstdint>
#include <random>

namespace bqs {

/// splitmix64 step; used to derive well-separated per-record seeds.
std::uint64_t mix64(std::uint64_t x);

/// Independent generator for one scan record: the master seed combined with
/// the doubled slit label of the fixed detector. Identical inputs give
/// bit-identical streams on every platform (mt19937_64 is fully specified).
std::mt19937_64 record_stream(std::uint64_t seed, int twice_l);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& rng);

/// Poisson sample with a fixed, platform-independent algorithm (inversion
/// by multiplication for small means, PTRS transformed rejection for large
/// ones). std::poisson_distribution is implementation-defined and would not
/// reproduce across standard libraries.
std::uint64_t poisson_sample(double mean, std::mt19937_64& rng);

} // namespace bqs
