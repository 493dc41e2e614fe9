#pragma once

// Deterministic randomness.  std::mt19937_64 is bit-exact across platforms,
// but the standard distributions are not, so bounded draws and unit doubles
// are implemented here by hand.  Replica seeds are derived with a fixed
// splitmix64 mixing chain so that (seed, replica, m) always maps to the same
// stream everywhere.

#include <cstdint>
#include <random>

namespace rollmix {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Documented replica-seed derivation: fold replica and inflation level into
// the base seed through three splitmix64 rounds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replica,
                                 std::uint64_t m) {
  std::uint64_t s = seed;
  splitmix64(s);
  s ^= 0x6a09e667f3bcc909ULL + replica;
  splitmix64(s);
  s ^= 0xbb67ae8584caa73bULL + m;
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased draw from [0, bound) by rejection; platform-stable.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rollmix
