#pragma once

#include <memory>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "mtd/channel_set.hpp"
#include "mtd/topology.hpp"

namespace mtd {

struct Scenario;

/// What one user has learned so far: known users with their channel sets,
/// and known edges among them.
///
/// Values are immutable. Merging allocates a fresh body that all members of
/// a co-channel component then share, so copying a state is O(1).
class KnowledgeState {
 public:
  /// Initial state: the owner knows itself and nothing else.
  KnowledgeState(int n_users, UserId owner, ChannelSet own_channels);

  UserId owner() const noexcept { return owner_; }
  int n_users() const noexcept { return body_->n_users; }

  bool knows(UserId u) const;
  /// nullptr when `u` is unknown.
  const ChannelSet* channel_set_of(UserId u) const;
  std::vector<UserId> known_users() const;
  std::size_t known_user_count() const noexcept { return body_->n_known; }

  bool knows_edge(Edge e) const;
  std::vector<Edge> known_edges() const;
  std::size_t known_edge_count() const noexcept { return body_->n_edges; }

  /// Intersection of the channel sets of every known user.
  const ChannelSet& common_channels() const noexcept { return body_->common; }

  /// The same knowledge, owned by another known user.
  /// Throws IntegrityError if `u` is not known.
  KnowledgeState as_seen_by(UserId u) const;

  /// True when both states share one body (same knowledge by construction).
  bool same_body(const KnowledgeState& other) const noexcept {
    return body_ == other.body_;
  }

  /// Same known users, channel sets, and edges (owner ignored).
  bool same_knowledge(const KnowledgeState& other) const;

  friend KnowledgeState merge_knowledge(std::span<const KnowledgeState> states,
                                        std::span<const Edge> new_edges);

 private:
  struct Body {
    int n_users = 0;
    std::vector<std::shared_ptr<const ChannelSet>> sets;  // null = unknown
    std::size_t n_known = 0;
    boost::dynamic_bitset<std::uint64_t> edges;  // bit u*K+v for u<v
    std::size_t n_edges = 0;
    ChannelSet common;
  };

  KnowledgeState(UserId owner, std::shared_ptr<const Body> body)
      : owner_(owner), body_(std::move(body)) {}

  std::size_t edge_bit(Edge e) const;

  UserId owner_ = 0;
  std::shared_ptr<const Body> body_;
};

/// Union of all known users and known edges, plus `new_edges`.
/// The result is owned by the owner of states[0].
/// Throws DomainError on an empty list or mismatched user counts, and
/// IntegrityError on conflicting channel sets or an edge whose endpoints
/// are unknown after the union.
KnowledgeState merge_knowledge(std::span<const KnowledgeState> states,
                               std::span<const Edge> new_edges);

/// Every user known with its exact channel set, and the known edge set
/// equal to the scenario's.
bool is_complete(const KnowledgeState& state, const Scenario& scenario);

}  // namespace mtd
