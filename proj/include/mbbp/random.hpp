#pragma once

#include <cstdint>
#include <random>

namespace mbbp {

// std::mt19937_64 has a fully specified output sequence, so everything drawn
// through the helpers below is reproducible across compilers and platforms.
// The standard distributions are avoided for that reason.
using rng_t = std::mt19937_64;

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(rng_t &rng, std::uint64_t n) {
  // Rejection on the top of the range removes modulo bias.
  const std::uint64_t limit = rng_t::max() - (rng_t::max() % n);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

/// Uniform integer in [lo, hi], inclusive.
inline std::uint64_t uniform_int(rng_t &rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + uniform_index(rng, hi - lo + 1);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(rng_t &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace mbbp
