// Deterministic randomness helpers.
//
// Two flavors: a tiny sequential generator (splitmix64) for data generation
// at problem-build time, and stateless hashes for anything keyed by
// (step, seed) or (batch, seed) — batch sampling and per-batch target noise
// must not depend on how many draws happened before them.
#pragma once

#include <cmath>
#include <cstdint>

namespace schedfree::rng {

/// splitmix64 step: advances `state` and returns the next 64-bit output.
inline std::uint64_t next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless mix of two words (seed and a stream position / key).
inline std::uint64_t hash2(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  // Fold `b` in through one splitmix round so (a, b) and (a, b') decorrelate.
  s ^= 0x2545f4914f6cdd1dULL * (b + 0x9e3779b97f4a7c15ULL);
  std::uint64_t z = next(s);
  return next(s) ^ (z << 1);
}

/// Uniform double in [0, 1) from a 64-bit word (top 53 bits).
inline double to_unit(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

/// Uniform double in [0, 1), stateless in (seed, key).
inline double uniform(std::uint64_t seed, std::uint64_t key) {
  return to_unit(hash2(seed, key));
}

/// Uniform double in [-scale, scale], stateless in (seed, key).
inline double uniform_symmetric(std::uint64_t seed, std::uint64_t key,
                                double scale) {
  return scale * (2.0 * uniform(seed, key) - 1.0);
}

/// Standard normal via Box-Muller, consuming two draws from `state`.
inline double normal(std::uint64_t& state) {
  double u1 = to_unit(next(state));
  const double u2 = to_unit(next(state));
  if (u1 <= 0.0) u1 = 0x1.0p-53;  // keep log() finite
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace schedfree::rng
