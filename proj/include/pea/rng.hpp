#pragma once

#include <cstdint>

namespace pea {

// 64-bit finalizer (splitmix64). Used both as the generator step and as the
// hash behind stream splitting.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// splitmix64 stream. Small, fast, and the state is a single word, so a run
// can hold one independent stream per island without noticeable memory cost.
struct Rng {
  uint64_t state = 0;

  Rng() = default;
  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    return mix64(state);
  }

  // [0, 1)
  double u01() { return (next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return u01() < p; }

  // uniform in [0, n), unbiased (masked rejection)
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t mask = ~0ull >> __builtin_clzll(n - 1 | 1);
    for (;;) {
      uint64_t v = next() & mask;
      if (v < n) return v;
    }
  }
};

// Deterministic substream derivation. Every derived seed depends on all input
// words, so changing mu, the topology, or the replication layout never
// silently reuses a stream.
inline uint64_t split(uint64_t seed, uint64_t a) {
  return mix64(seed ^ 0x9E3779B97F4A7C15ull ^ mix64(a ^ 0xD1B54A32D192ED03ull));
}
inline uint64_t split(uint64_t seed, uint64_t a, uint64_t b) { return split(split(seed, a), b); }
inline uint64_t split(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return split(split(seed, a, b), c);
}

}  // namespace pea
