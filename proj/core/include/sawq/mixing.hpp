#pragma once

#include <cstdint>

namespace sawq {

// 64-bit avalanche permutation (the SplitMix64 finalizer). This function is
// frozen: the repository's golden vectors pin its output, and every random
// field in the project is a pure function of it.
constexpr uint64_t mix64(uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

// Folds one word into a running key. Bijective in `word` for fixed `key`, so
// chains over distinct word sequences of equal length cannot collide stepwise.
constexpr uint64_t mix_combine(uint64_t key, uint64_t word) noexcept {
  return mix64(key ^ (word * kGolden64 + 0x1d8e4e27c47d124fULL));
}

// Maps a word to (0,1): 53-bit resolution, offset by half an ulp so the
// endpoints are never produced. Safe to feed into quantile transforms.
constexpr double unit_open(uint64_t w) noexcept {
  return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

// Counter-based stream for internal sampling (instance draws, test inputs).
// Unlike std distributions this is identical on every platform.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) noexcept : state(seed) {}

  uint64_t next() noexcept {
    state += kGolden64;
    return mix64(state);
  }
  double unit() noexcept { return unit_open(next()); }
  // uniform in [lo, hi)
  double range(double lo, double hi) noexcept { return lo + unit() * (hi - lo); }
  // uniform integer in [0, n)
  uint64_t below(uint64_t n) noexcept { return next() % n; }
};

}  // namespace sawq
