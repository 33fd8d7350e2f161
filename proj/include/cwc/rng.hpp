#pragma once

#include <cstdint>

namespace cwc {

// Fixed 64-bit generator (splitmix64). All randomness in the toolkit flows
// through this so that seeded runs reproduce bit-identically across platforms.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound), bound >= 1; rejection-free multiply-shift would be
  // biased for huge bounds, plain rejection keeps it exact
  uint64_t below(uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // uniform in [lo, hi] inclusive
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }
};

// derives independent stream seeds, e.g. one per trial
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  SplitMix64 g(seed ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return g.next();
}

}  // namespace cwc
