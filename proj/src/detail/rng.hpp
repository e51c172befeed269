#pragma once

#include <cstdint>
#include <random>

namespace hbi::detail {

// Uniform double in [0, 1) from the top 53 bits of a mt19937_64 draw.
// Fully specified by the standard, unlike uniform_real_distribution, so
// sampled point sets are reproducible across toolchains.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

// Radical-inverse (van der Corput) sequence in the given prime base.
inline double radical_inverse(std::uint64_t i, int base) {
  double inv_base = 1.0 / base;
  double scale = inv_base;
  double result = 0.0;
  while (i > 0) {
    result += static_cast<double>(i % base) * scale;
    i /= base;
    scale *= inv_base;
  }
  return result;
}

inline int nth_prime(int n) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                               37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};
  return primes[n % (sizeof(primes) / sizeof(primes[0]))];
}

}  // namespace hbi::detail
