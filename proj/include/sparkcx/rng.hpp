#pragma once

#include <cstdint>

#include "sparkcx/exact.hpp"

namespace sparkcx {

// SplitMix64, pinned bit-exactly so reports are reproducible across
// platforms: state += 0x9E3779B97F4A7C15; z = state; z = (z ^ (z >> 30)) *
// 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return
// z ^ (z >> 31).  Bounded draws use plain modulo.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi] via modulo
  long range(long lo, long hi) {
    return lo + (long)(next() % (uint64_t)(hi - lo + 1));
  }

  Int small_int(long bound = 2) { return Int(range(-bound, bound)); }

  Rat small_rat(long num_bound = 2, long den_bound = 3) {
    Int n = small_int(num_bound);
    Int d = Int(range(1, den_bound));
    return make_rat(n, d);
  }

 private:
  uint64_t state_;
};

}  // namespace sparkcx
