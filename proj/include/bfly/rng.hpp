#pragma once

#include <cstdint>
#include <random>

namespace bfly {

// splitmix64 step; used as a 64-bit mixer for seed derivation and for
// one-shot counter-based draws (sparsifier coins, vertex colors).
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic combination of a user seed and a stream/counter index.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index));
}

// Top 53 bits to a double in [0, 1).
inline double unit_double(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Multiply-shift map of a hash value onto [0, n). Bias is below n / 2^64,
// irrelevant at any feasible n; used only for one-shot counter draws.
inline uint64_t bounded_from_bits(uint64_t bits, uint64_t n) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(bits) * n) >> 64);
}

// mt19937_64 with portable bounded draws. std::uniform_int_distribution is
// implementation-defined, so bounded draws use mask rejection instead; the
// output is then identical on every platform for a given seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Independent stream for iteration `index` of a run seeded with `seed`.
  static Rng stream(uint64_t seed, uint64_t index) {
    return Rng(derive_seed(seed, index));
  }

  uint64_t next() { return engine_(); }

  double uniform_unit() { return unit_double(next()); }

  // Uniform on [0, n), n >= 1.
  uint64_t uniform_index(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> __builtin_clzll(n - 1);
    uint64_t r;
    do {
      r = next() & mask;
    } while (r >= n);
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bfly
