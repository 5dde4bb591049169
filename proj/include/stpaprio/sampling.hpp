#pragma once

// Counter-based random draws. Every draw is a pure function of
// (seed, iteration, requirement, factor, stream), so the simulation output
// does not depend on how iterations are scheduled across threads.

#include <cstdint>

namespace stpaprio {

struct DrawKey {
  std::uint64_t seed;
  std::uint64_t iteration;
  std::uint64_t requirement;
  std::uint64_t factor;
  std::uint64_t stream;
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t hash_key(const DrawKey& k) {
  std::uint64_t h = splitmix64(k.seed);
  h = splitmix64(h ^ k.iteration);
  h = splitmix64(h ^ k.requirement);
  h = splitmix64(h ^ k.factor);
  return splitmix64(h ^ k.stream);
}

// Uniform in [0, 1) with 53 bits of resolution.
inline constexpr double uniform01(const DrawKey& k) {
  return static_cast<double>(hash_key(k) >> 11) * 0x1.0p-53;
}

// Inverse CDF of Tri(lower, mode, upper) at u in [0, 1). Returns `mode`
// exactly when the bracket is degenerate.
double triangular_quantile(double lower, double mode, double upper, double u);

}  // namespace stpaprio
