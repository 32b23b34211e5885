#include "bqs/random.hpp"

#include "bqs/errors.hpp"

#include <cmath>

namespace bqs {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::mt19937_64 record_stream(std::uint64_t seed, int twice_l) {
  const auto tag = static_cast<std::uint64_t>(static_cast<std::int64_t>(twice_l));
  return std::mt19937_64(mix64(seed ^ mix64(tag + 0x51D1ull)));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

// Inversion by sequential search; cheap and exact for small means.
std::uint64_t poisson_small(double mean, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double p = std::exp(-mean);
  double cum = p;
  std::uint64_t k = 0;
  while (u > cum && k < 200) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
  }
  return k;
}

// Hormann's PTRS transformed-rejection sampler for mean >= 10.
std::uint64_t poisson_ptrs(double mean, std::mt19937_64& rng) {
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform01(rng) - 0.5;
    const double v = uniform01(rng);
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        kf * loglam - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

} // namespace

std::uint64_t poisson_sample(double mean, std::mt19937_64& rng) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw NumericalError("Poisson mean must be finite and nonnegative");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_small(mean, rng);
  return poisson_ptrs(mean, rng);
}

} // namespace bqs
