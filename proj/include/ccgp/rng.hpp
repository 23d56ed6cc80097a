// Deterministic splittable pseudo-random generator (splitmix64).  Output is
// identical on every platform and standard library; nothing in the library
// uses std::random distributions.
#pragma once

#include <cstdint>

namespace ccgp {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish draw in [0, n); n = 0 yields 0.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  // An independent child stream; advancing either does not affect the other.
  SplitMix64 split() { return SplitMix64(next() ^ 0x632be59bd9b4e019ull); }
};

}  // namespace ccgp
