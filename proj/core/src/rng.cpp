#include "mtd/rng.hpp"

namespace mtd {

namespace {

__extension__ using Uint128 = unsigned __int128;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(parent);
  for (std::uint64_t label : path) {
    h = mix64(h ^ mix64(label + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

Rng::Rng(std::uint64_t seed) noexcept {
  // Consecutive SplitMix64 outputs; never all zero.
  std::uint64_t x = seed;
  for (auto& word : s_) {
    word = mix64(x);
    x += 0x9E3779B97F4A7C15ULL;
  }
}

Rng::result_type Rng::operator()() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-and-reject; unbiased.
  Uint128 m = static_cast<Uint128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<Uint128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform01() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace mtd
