#include "mtd/topology.hpp"

#include <algorithm>
#include <numeric>

#include "mtd/errors.hpp"

namespace mtd {

Topology::Topology(int n_users, std::vector<Edge> edges)
    : n_users_(n_users), adjacency_(static_cast<std::size_t>(std::max(n_users, 0))) {
  if (n_users < 0) throw DomainError("Topology: negative user count");
  for (auto& e : edges) {
    if (e.u == e.v) throw DomainError("Topology: self-loop");
    e = Edge::of(e.u, e.v);
    if (e.u < 0 || e.v >= n_users) throw DomainError("Topology: endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Topology::has_edge(UserId a, UserId b) const {
  if (a == b || a < 0 || b < 0 || a >= n_users_ || b >= n_users_) return false;
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

bool Topology::is_connected() const {
  if (n_users_ <= 1) return true;
  std::vector<UserId> all(n_users_);
  std::iota(all.begin(), all.end(), 0);
  return connected_components(*this, all).size() == 1;
}

std::vector<std::vector<UserId>> connected_components(const Topology& topology,
                                                      std::span<const UserId> subset) {
  const int n = topology.n_users();
  std::vector<char> member(n, 0);
  for (UserId u : subset) {
    if (u < 0 || u >= n) throw DomainError("connected_components: user out of range");
    member[u] = 1;
  }

  std::vector<char> seen(n, 0);
  std::vector<std::vector<UserId>> components;
  std::vector<UserId> stack;
  // Scanning ids in ascending order yields components ordered by minimum id.
  for (UserId start = 0; start < n; ++start) {
    if (!member[start] || seen[start]) continue;
    std::vector<UserId> component;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const UserId u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (UserId v : topology.neighbors(u)) {
        if (member[v] && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

}  // namespace mtd
