#include "mtd/knowledge.hpp"

#include <algorithm>

#include "mtd/errors.hpp"
#include "mtd/scenario.hpp"

namespace mtd {

KnowledgeState::KnowledgeState(int n_users, UserId owner, ChannelSet own_channels)
    : owner_(owner) {
  if (n_users < 1) throw DomainError("KnowledgeState: need at least one user");
  if (owner < 0 || owner >= n_users) throw DomainError("KnowledgeState: owner out of range");
  auto body = std::make_shared<Body>();
  body->n_users = n_users;
  body->sets.resize(n_users);
  body->common = own_channels;
  body->sets[owner] = std::make_shared<const ChannelSet>(std::move(own_channels));
  body->n_known = 1;
  body->edges.resize(static_cast<std::size_t>(n_users) * n_users);
  body_ = std::move(body);
}

std::size_t KnowledgeState::edge_bit(Edge e) const {
  return static_cast<std::size_t>(e.u) * body_->n_users + e.v;
}

bool KnowledgeState::knows(UserId u) const {
  return u >= 0 && u < body_->n_users && body_->sets[u] != nullptr;
}

const ChannelSet* KnowledgeState::channel_set_of(UserId u) const {
  return knows(u) ? body_->sets[u].get() : nullptr;
}

std::vector<UserId> KnowledgeState::known_users() const {
  std::vector<UserId> out;
  out.reserve(body_->n_known);
  for (UserId u = 0; u < body_->n_users; ++u) {
    if (body_->sets[u]) out.push_back(u);
  }
  return out;
}

bool KnowledgeState::knows_edge(Edge e) const {
  e = Edge::of(e.u, e.v);
  if (e.u < 0 || e.v >= body_->n_users || e.u == e.v) return false;
  return body_->edges.test(edge_bit(e));
}

std::vector<Edge> KnowledgeState::known_edges() const {
  std::vector<Edge> out;
  out.reserve(body_->n_edges);
  const auto k = static_cast<std::size_t>(body_->n_users);
  for (auto pos = body_->edges.find_first(); pos != body_->edges.npos;
       pos = body_->edges.find_next(pos)) {
    out.push_back(Edge{static_cast<UserId>(pos / k), static_cast<UserId>(pos % k)});
  }
  return out;
}

KnowledgeState KnowledgeState::as_seen_by(UserId u) const {
  if (!knows(u)) throw IntegrityError("as_seen_by: user is not known");
  return KnowledgeState(u, body_);
}

bool KnowledgeState::same_knowledge(const KnowledgeState& other) const {
  if (body_ == other.body_) return true;
  const Body& a = *body_;
  const Body& b = *other.body_;
  if (a.n_users != b.n_users || a.n_known != b.n_known || a.edges != b.edges) return false;
  for (int u = 0; u < a.n_users; ++u) {
    if (static_cast<bool>(a.sets[u]) != static_cast<bool>(b.sets[u])) return false;
    if (a.sets[u] && a.sets[u] != b.sets[u] && *a.sets[u] != *b.sets[u]) return false;
  }
  return true;
}

KnowledgeState merge_knowledge(std::span<const KnowledgeState> states,
                               std::span<const Edge> new_edges) {
  if (states.empty()) throw DomainError("merge_knowledge: empty state list");
  const int k = states.front().n_users();

  std::vector<const KnowledgeState::Body*> bodies;
  bodies.reserve(states.size());
  for (const auto& s : states) {
    if (s.n_users() != k) throw DomainError("merge_knowledge: user counts differ");
    const auto* b = s.body_.get();
    if (std::find(bodies.begin(), bodies.end(), b) == bodies.end()) bodies.push_back(b);
  }

  const auto& first = *bodies.front();
  if (bodies.size() == 1) {
    // Nothing to union; only new edges could change the state.
    const bool all_known = std::all_of(new_edges.begin(), new_edges.end(), [&](Edge e) {
      return states.front().knows_edge(e);
    });
    if (all_known) return states.front();
  }

  auto merged = std::make_shared<KnowledgeState::Body>(first);
  for (std::size_t i = 1; i < bodies.size(); ++i) {
    const auto& other = *bodies[i];
    for (int u = 0; u < k; ++u) {
      const auto& incoming = other.sets[u];
      if (!incoming) continue;
      auto& slot = merged->sets[u];
      if (!slot) {
        slot = incoming;
      } else if (slot != incoming && *slot != *incoming) {
        throw IntegrityError("merge_knowledge: conflicting channel sets for user " +
                             std::to_string(u));
      }
    }
    merged->edges |= other.edges;
    merged->common = set_intersection(merged->common, other.common);
  }

  for (Edge e : new_edges) {
    e = Edge::of(e.u, e.v);
    if (e.u < 0 || e.v >= k || e.u == e.v) {
      throw IntegrityError("merge_knowledge: edge endpoint out of range");
    }
    if (!merged->sets[e.u] || !merged->sets[e.v]) {
      throw IntegrityError("merge_knowledge: edge endpoint unknown after merge");
    }
    merged->edges.set(static_cast<std::size_t>(e.u) * k + e.v);
  }

  merged->n_known = static_cast<std::size_t>(
      std::count_if(merged->sets.begin(), merged->sets.end(),
                    [](const auto& p) { return p != nullptr; }));
  merged->n_edges = merged->edges.count();
  return KnowledgeState(states.front().owner(), std::move(merged));
}

bool is_complete(const KnowledgeState& state, const Scenario& scenario) {
  const int k = scenario.n_users();
  if (state.n_users() != k) return false;
  if (state.known_user_count() != static_cast<std::size_t>(k)) return false;
  if (state.known_edge_count() != scenario.topology.edge_count()) return false;
  for (UserId u = 0; u < k; ++u) {
    const ChannelSet* known = state.channel_set_of(u);
    if (!known || *known != scenario.channel_sets[u]) return false;
  }
  for (const Edge& e : scenario.topology.edges()) {
    if (!state.knows_edge(e)) return false;
  }
  return true;
}

}  // namespace mtd
