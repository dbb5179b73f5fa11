#include "mtd/channel_set.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

#include "mtd/errors.hpp"

namespace mtd {

ChannelSet::ChannelSet(std::vector<Channel> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw DomainError("ChannelSet: duplicate channel");
  }
  if (!members_.empty() && members_.front() < 1) {
    throw DomainError("ChannelSet: channel labels start at 1");
  }
}

ChannelSet::ChannelSet(std::initializer_list<Channel> members)
    : ChannelSet(std::vector<Channel>(members)) {}

ChannelSet ChannelSet::full(int n) {
  std::vector<Channel> all(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(all.begin(), all.end(), 1);
  ChannelSet s;
  s.members_ = std::move(all);
  return s;
}

bool ChannelSet::contains(Channel c) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), c);
}

bool ChannelSet::is_subset_of(const ChannelSet& other) const noexcept {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

bool ChannelSet::within(int n) const noexcept {
  return members_.empty() || (members_.front() >= 1 && members_.back() <= n);
}

std::string ChannelSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(members_[i]);
  }
  out += '}';
  return out;
}

ChannelSet set_intersection(const ChannelSet& a, const ChannelSet& b) {
  std::vector<Channel> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ChannelSet(std::move(out));
}

ChannelSet set_union(const ChannelSet& a, const ChannelSet& b) {
  std::vector<Channel> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ChannelSet(std::move(out));
}

ChannelSet set_difference(const ChannelSet& a, const ChannelSet& b) {
  std::vector<Channel> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ChannelSet(std::move(out));
}

std::size_t intersection_size(const ChannelSet& a, const ChannelSet& b) noexcept {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw DomainError("Rational: expects num >= 0 and den > 0");
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational Rational::reciprocal() const {
  if (num == 0) throw DivergenceError("Rational: reciprocal of zero");
  return make(den, num);
}

Rational jaccard(const ChannelSet& a, const ChannelSet& b) {
  if (a.empty() || b.empty()) throw DomainError("jaccard: empty channel set");
  const auto common = static_cast<std::int64_t>(intersection_size(a, b));
  const auto total = static_cast<std::int64_t>(a.size() + b.size()) - common;
  return Rational::make(common, total);
}

ChannelSet intersect_all(std::span<const ChannelSet> sets) {
  if (sets.empty()) throw DomainError("intersect_all: empty list");
  ChannelSet acc = sets.front();
  for (const auto& s : sets.subspan(1)) {
    if (acc.empty()) break;
    acc = set_intersection(acc, s);
  }
  return acc;
}

}  // namespace mtd
