#pragma once

#include <array>
#include <cstdint>

namespace ergraph {

// SplitMix64 step. Used for seed expansion and child-stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ stream, seeded via SplitMix64 expansion.
///
/// Every stochastic routine in the library takes an explicit seed and
/// derives child streams with Rng::child, so replications are reproducible
/// and independent of scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next() noexcept {
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

  /// Uniform double in [0,1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Child stream keyed by one replication index.
  static Rng child(std::uint64_t master, std::uint64_t key) noexcept {
    return Rng(derive(master, key));
  }

  /// Child stream keyed by (k1, k2), e.g. (grid point, replication).
  static Rng child(std::uint64_t master, std::uint64_t k1, std::uint64_t k2) noexcept {
    return Rng(derive(derive(master, k1), k2));
  }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t key) noexcept {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (key + 1));
    return splitmix64(s);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace ergraph
