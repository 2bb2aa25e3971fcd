#pragma once
// Counter-based RNG (splitmix64). Streams depend only on (seed, counter),
// never on platform or call interleaving, which keeps sampled runs and
// random generators reproducible everywhere.

#include <cstdint>

namespace cobex {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// j-th draw of the stream identified by seed
inline std::uint64_t rng_at(std::uint64_t seed, std::uint64_t j) {
  return splitmix64(seed ^ splitmix64(j + 0x1234567890abcdefULL));
}

// uniform integer in [0, n) from one draw (n > 0)
inline std::uint64_t rng_below(std::uint64_t draw, std::uint64_t n) {
  return draw % n;  // modulo bias is irrelevant at our sample counts
}

}  // namespace cobex
