#ifndef TRIAGE_RNG_HPP
#define TRIAGE_RNG_HPP

#include <cstdint>
#include <random>

namespace triage {

// All stochastic operations take an explicit generator; there is no global
// RNG state anywhere in the library.
using Rng = std::mt19937_64;

// Derives an independent stream for a parallel task (replication index,
// sweep cell, ...) from a base seed. SplitMix64 finalizer, so neighboring
// indices give uncorrelated seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Unit-exponential draw. -log(1-U) keeps the result finite for U in [0,1).
inline double exponential1(Rng& rng) {
  return -std::log1p(-uniform01(rng));
}

}  // namespace triage

#endif  // TRIAGE_RNG_HPP
