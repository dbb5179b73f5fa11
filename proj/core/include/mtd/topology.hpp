#pragma once

#include <compare>
#include <span>
#include <vector>

namespace mtd {

/// Secondary-user index, 0-based: valid ids are 0..K-1.
using UserId = int;

/// Undirected edge, stored with u < v.
struct Edge {
  UserId u = 0;
  UserId v = 0;

  /// Normalizes endpoint order. Self-loops are rejected by Topology.
  static constexpr Edge of(UserId a, UserId b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph over users 0..n_users-1.
class Topology {
 public:
  Topology() = default;

  /// Edges may be given in either orientation; duplicates are merged.
  /// Throws DomainError on self-loops or out-of-range endpoints.
  Topology(int n_users, std::vector<Edge> edges);

  int n_users() const noexcept { return n_users_; }

  /// Sorted ascending by (u, v).
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted ascending.
  std::span<const UserId> neighbors(UserId u) const { return adjacency_.at(u); }

  bool has_edge(UserId a, UserId b) const;
  bool is_connected() const;

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.n_users_ == b.n_users_ && a.edges_ == b.edges_;
  }

 private:
  int n_users_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<UserId>> adjacency_;
};

/// Partition of `subset` into maximal connected components of the induced
/// subgraph. Components are ascending internally and ordered by their
/// smallest id.
std::vector<std::vector<UserId>> connected_components(const Topology& topology,
                                                      std::span<const UserId> subset);

}  // namespace mtd
