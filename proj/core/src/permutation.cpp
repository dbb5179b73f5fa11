#include "mtd/permutation.hpp"

#include <numeric>

#include "mtd/errors.hpp"
#include "mtd/rng.hpp"

namespace mtd {

Permutation::Permutation(std::vector<Channel> forward)
    : forward_(std::move(forward)), inverse_(forward_.size(), 0) {
  const int n = static_cast<int>(forward_.size());
  for (int i = 0; i < n; ++i) {
    const Channel image = forward_[i];
    if (image < 1 || image > n || inverse_[image - 1] != 0) {
      throw DomainError("Permutation: not a bijection on {1..n}");
    }
    inverse_[image - 1] = i + 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Channel> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation perm_from_seed(std::uint64_t seed, int n) {
  if (n < 1) throw DomainError("perm_from_seed: n must be >= 1");
  std::vector<Channel> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(images[i], images[j]);
  }
  return Permutation(std::move(images));
}

}  // namespace mtd
