#pragma once

#include <cstdint>

namespace lslab {

// Counter-based randomness: every draw is a pure function of (seed, counter),
// so workers can consume disjoint counter ranges and the stream never depends
// on how work is partitioned.

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t x = mix64(counter + 0x632BE59BD9B4E019ull * (seed + 1));
  x ^= mix64(seed ^ 0xD1B54A32D192ED03ull);
  return mix64(x);
}

/// Uniform double in [0, 1) from the (seed, counter) stream.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(counter_draw(seed, counter) >> 11) * 0x1.0p-53;
}

/// Derive an independent sub-seed (per annulus, per phase, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ mix64(tag + 0x9E3779B97F4A7C15ull));
}

/// Van der Corput radical inverse in base `b`.
inline double radical_inverse(std::uint64_t index, std::uint32_t b) {
  double inv = 1.0 / b, f = inv, x = 0.0;
  while (index > 0) {
    x += f * static_cast<double>(index % b);
    index /= b;
    f *= inv;
  }
  return x;
}

/// Halton point coordinate `dim` (prime bases) for sample `index`.
/// Deterministic low-discrepancy stream used by the smoke-test mode.
inline double halton(std::uint64_t index, unsigned dim) {
  static constexpr std::uint32_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                              23, 29, 31, 37, 41, 43, 47, 53};
  return radical_inverse(index + 1, kPrimes[dim % 16]);
}

}  // namespace lslab
