#pragma once

#include <cstdint>
#include <random>

namespace algmod {

/// Default seed for every randomized procedure ("A1GEBRA1C" spelled in hex
/// digits as 0xA16EB4A1C).
inline constexpr std::uint64_t kDefaultSeed = 0xA16EB4A1CULL;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seeded generator; child streams are derived by mixing a branch index into
/// the seed, so results do not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  Rng split(std::uint64_t branch) const noexcept {
    return Rng(splitmix64(seed_ ^ splitmix64(branch + 0x632BE59BD9B4E019ULL)));
  }
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace algmod
