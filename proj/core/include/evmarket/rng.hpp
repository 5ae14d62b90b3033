#pragma once

#include <cstdint>
#include <random>

namespace evmarket {

// Seeded generator whose output is fixed by the C++ standard (mt19937_64) and
// does not go through std::uniform_real_distribution, so draws match across
// platforms and can be reproduced in other languages.
//
// Stream splitting: the substream for (seed, domain, index) is seeded with
//   splitmix64(splitmix64(seed ^ splitmix64(domain)) + index)
// where domain separates uses (bids, preferences) and index is the user.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(seed ^ splitmix64(domain)) + index));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double low, double high) { return low + (high - low) * unit(); }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

// Substream domains.
inline constexpr std::uint64_t kBidStream = 1;
inline constexpr std::uint64_t kPreferenceStream = 2;

}  // namespace evmarket
