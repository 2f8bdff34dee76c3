#ifndef SATNET_RANDOM_HPP
#define SATNET_RANDOM_HPP

#include <cstdint>
#include <random>

namespace satnet {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for run `index` of an experiment seeded with `base`.
inline Rng derive_stream(std::uint64_t base, std::uint64_t index) {
  return Rng(mix64(mix64(base) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

// Uniform double in [0, 1) from the top 53 bits of one draw. Spelled out so
// that sampled trajectories do not depend on the standard library's
// distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace satnet

#endif  // SATNET_RANDOM_HPP
