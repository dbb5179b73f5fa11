#pragma once

#include <cstdint>
#include <vector>

#include "mtd/channel_set.hpp"

namespace mtd {

/// Bijection on {1..n}, with its inverse.
class Permutation {
 public:
  /// forward[i-1] is the image of i. Throws DomainError if not a bijection.
  explicit Permutation(std::vector<Channel> forward);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(forward_.size()); }
  Channel operator()(Channel c) const { return forward_[c - 1]; }
  Channel inverse(Channel c) const { return inverse_[c - 1]; }

  const std::vector<Channel>& images() const noexcept { return forward_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Channel> forward_;
  std::vector<Channel> inverse_;
};

/// Fisher-Yates shuffle of {1..n} driven by mtd::Rng(seed).
/// Deterministic per (seed, n). Throws DomainError if n < 1.
Permutation perm_from_seed(std::uint64_t seed, int n);

}  // namespace mtd
