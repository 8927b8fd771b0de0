#pragma once

#include <cstdint>
#include <limits>

namespace paretogof {

// SplitMix64 finalizer; a good 64-bit mixer for seed derivation.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-mode split: the stream for replicate r depends only on
// (master seed, r), never on which worker runs it.
constexpr std::uint64_t child_seed(std::uint64_t master,
                                   std::uint64_t index) noexcept {
  return splitmix64_mix(splitmix64_mix(master) ^
                        splitmix64_mix(index + 0x632BE59BD9B4E019ULL));
}

// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    // Consecutive SplitMix64 outputs; never all zero.
    std::uint64_t z = seed;
    for (auto& w : state_) {
      w = splitmix64_mix(z);
      z += 0x9E3779B97F4A7C15ULL;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits; platform independent, unlike
  // std::uniform_real_distribution.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace paretogof
