#pragma once

#include <cstdint>
#include <limits>

namespace bnfkit {

/// SplitMix64: a counter-based 64-bit generator (state advances by a fixed
/// odd increment; output is a bijective mix of the counter). Satisfies
/// UniformRandomBitGenerator so it plugs into the std distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(state_ += 0x9E3779B97F4A7C15ULL); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Independent substream for (seed, index): hash both into a fresh state.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(SplitMix64::mix(SplitMix64::mix(seed) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL)));
}

/// Two-level substream, e.g. (seed, task, degree).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return substream(SplitMix64::mix(seed ^ SplitMix64::mix(a + 0x632BE59BD9B4E019ULL)), b);
}

}  // namespace bnfkit
