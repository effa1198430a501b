#pragma once

#include <cstdint>
#include <random>

namespace wman {

// SplitMix64 finalizer used to derive independent stream seeds from a master
// seed plus context indices, so every work unit draws from its own stream and
// can be reproduced in isolation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ (a + 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ (b + 0xC2B2AE3D27D4EB4Full));
  h = mix64(h ^ (c + 0x165667B19E3779F9ull));
  return h;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace wman
