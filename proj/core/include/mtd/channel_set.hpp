#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mtd {

/// Channel label, 1-based: valid channels are 1..N.
using Channel = int;

/// Sorted set of distinct channel labels. Iteration is ascending.
class ChannelSet {
 public:
  ChannelSet() = default;

  /// Accepts members in any order. Throws DomainError on duplicates or
  /// labels below 1.
  explicit ChannelSet(std::vector<Channel> members);
  ChannelSet(std::initializer_list<Channel> members);

  /// {1, ..., n}.
  static ChannelSet full(int n);

  bool contains(Channel c) const noexcept;
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  Channel min() const { return members_.front(); }
  Channel max() const { return members_.back(); }

  std::span<const Channel> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool is_subset_of(const ChannelSet& other) const noexcept;

  /// True when every member lies in [1, n].
  bool within(int n) const noexcept;

  std::string to_string() const;

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;
  friend auto operator<=>(const ChannelSet&, const ChannelSet&) = default;

 private:
  std::vector<Channel> members_;
};

ChannelSet set_intersection(const ChannelSet& a, const ChannelSet& b);
ChannelSet set_union(const ChannelSet& a, const ChannelSet& b);
ChannelSet set_difference(const ChannelSet& a, const ChannelSet& b);
std::size_t intersection_size(const ChannelSet& a, const ChannelSet& b) noexcept;

/// Exact non-negative fraction, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  Rational reciprocal() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// |a ∩ b| / |a ∪ b|. Throws DomainError if either set is empty.
Rational jaccard(const ChannelSet& a, const ChannelSet& b);

/// Intersection of every set in the list; may be empty.
/// Throws DomainError on an empty list.
ChannelSet intersect_all(std::span<const ChannelSet> sets);

}  // namespace mtd
