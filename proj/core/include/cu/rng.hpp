#pragma once

#include <cstdint>

namespace cu {

// Counter-based stream derivation: every (seed, stream, trial) triple yields
// an independent splitmix64 sequence, so trials can be evaluated in any
// order (or in parallel) with identical results.
inline uint64_t splitmix64_next(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class TrialRng {
 public:
  TrialRng(uint64_t seed, uint64_t stream, uint64_t trial) : state_(seed) {
    state_ ^= splitmix64_next(state_) + stream * 0xD1B54A32D192ED03ULL;
    state_ ^= splitmix64_next(state_) + trial * 0x8CB92BA72F3D8DD7ULL;
  }

  uint64_t next_u64() { return splitmix64_next(state_); }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

}  // namespace cu
