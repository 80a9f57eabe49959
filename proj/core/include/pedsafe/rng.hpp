#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace pedsafe {

// Deterministic PRNG with identical output on every platform/compiler.
// std::uniform_real_distribution is implementation-defined, so session
// reproducibility (byte-identical logs) is built on this instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the xoshiro256++ state
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform in [0, 1), 53-bit resolution
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  bool operator==(const Rng& other) const { return state_ == other.state_; }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
};

// Stable 64-bit hash for deriving independent sub-streams from
// (condition, profile, seed) coordinates.
inline std::uint64_t hash_combine(std::uint64_t h, std::string_view tag) {
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;  // FNV-1a prime
  }
  return h;
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

inline std::uint64_t derive_seed(std::string_view condition, std::string_view profile,
                                 std::uint64_t seed, std::string_view purpose) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV offset basis
  h = hash_combine(h, condition);
  h = hash_combine(h, profile);
  h = hash_combine(h, seed);
  h = hash_combine(h, purpose);
  return h;
}

}  // namespace pedsafe
