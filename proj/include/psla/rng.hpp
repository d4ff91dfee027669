#pragma once

#include <cstdint>

namespace psla {

// Deterministic counter-based generator; identical streams on every
// platform, and sub-streams can be split off by key.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  SplitMix64 split(std::uint64_t key) const {
    SplitMix64 sub(state ^ (key * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    sub.next();
    return sub;
  }
};

// Uniform draw from [0, bound), rejection-sampled to avoid modulo bias.
inline std::uint64_t uniform_below(SplitMix64& g, std::uint64_t bound) {
  const std::uint64_t threshold = (~bound + 1) % bound;  // == 2^64 mod bound
  for (;;) {
    const std::uint64_t x = g.next();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace psla
