#ifndef QBC_RNG_HPP
#define QBC_RNG_HPP

#include <cstdint>
#include <random>

namespace qbc {

// Derives an independent RNG stream from (seed, stream index). Used so that
// parallel tasks get reproducible randomness regardless of scheduling order.
inline std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return std::mt19937_64(z);
}

inline double uniform01(std::mt19937_64& g) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

inline double normal(std::mt19937_64& g) {
  return std::normal_distribution<double>(0.0, 1.0)(g);
}

}  // namespace qbc

#endif  // QBC_RNG_HPP
