#pragma once

#include <cstdint>
#include <random>

namespace dqcevo {

// std::uniform_*_distribution output is implementation-defined, which would
// break byte-identical results across toolchains. These helpers are the only
// sanctioned way to draw bounded values in this codebase.

// Unbiased integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

}  // namespace dqcevo
