#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mtd {

/// SplitMix64 output function. Every derived seed in the project goes
/// through this mixer, so seed trees are stable across platforms.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a parent and a path of labels, e.g.
/// derive_seed(master, {kScenarioTag, index}). Order of labels matters.
std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> path) noexcept;

/// xoshiro256** seeded via SplitMix64. Satisfies UniformRandomBitGenerator,
/// but the helpers below are used instead of <random> distributions so the
/// streams are identical across standard library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  std::uint64_t s_[4];
};

}  // namespace mtd
