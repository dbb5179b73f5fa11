#include "mtd/engine.hpp"

#include <algorithm>
#include <numeric>

#include "mtd/errors.hpp"

namespace mtd {

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(int n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

bool all_complete(std::span<const KnowledgeState> states, const Scenario& scenario) {
  const auto k = static_cast<std::size_t>(scenario.n_users());
  const auto e = scenario.topology.edge_count();
  for (const auto& s : states) {
    if (s.known_user_count() != k || s.known_edge_count() != e) return false;
  }
  for (std::size_t u = 0; u < states.size(); ++u) {
    if (u > 0 && states[u].same_body(states[u - 1])) continue;
    if (!is_complete(states[u], scenario)) return false;
  }
  return true;
}

bool all_on_one_channel(std::span<const HopDecision> decisions) {
  if (decisions.empty() || decisions.front().is_idle()) return false;
  return std::all_of(decisions.begin(), decisions.end(),
                     [&](HopDecision d) { return d == decisions.front(); });
}

Scenario pair_scenario(const ChannelSet& c1, const ChannelSet& c2, int n) {
  if (c1.empty() || c2.empty()) throw DomainError("pair run: empty channel set");
  Scenario s;
  s.n_channels = n;
  s.topology = Topology(2, {Edge{0, 1}});
  s.channel_sets = {c1, c2};
  s.common_set = set_intersection(c1, c2);
  return s;
}

}  // namespace

Slot default_horizon(const AlgorithmSpec& spec, int n_channels) noexcept {
  return spec.bounded_by_n() ? Slot{n_channels} : Slot{16} * n_channels;
}

std::vector<KnowledgeState> initial_states(const Scenario& scenario) {
  std::vector<KnowledgeState> states;
  const int k = scenario.n_users();
  states.reserve(static_cast<std::size_t>(k));
  for (UserId u = 0; u < k; ++u) states.emplace_back(k, u, scenario.channel_sets.at(u));
  return states;
}

std::vector<KnowledgeState> step(const Scenario& scenario,
                                 std::span<const KnowledgeState> states,
                                 std::span<const HopDecision> decisions) {
  const int k = scenario.n_users();
  if (states.size() != static_cast<std::size_t>(k) ||
      decisions.size() != static_cast<std::size_t>(k)) {
    throw DomainError("step: one state and one decision per user required");
  }

  DisjointSet groups(k);
  for (const Edge& e : scenario.topology.edges()) {
    if (!decisions[e.u].is_idle() && decisions[e.u] == decisions[e.v]) groups.unite(e.u, e.v);
  }

  std::vector<std::vector<UserId>> members(k);
  for (UserId u = 0; u < k; ++u) {
    if (!decisions[u].is_idle()) members[groups.find(u)].push_back(u);
  }
  std::vector<std::vector<Edge>> component_edges(k);
  for (const Edge& e : scenario.topology.edges()) {
    if (!decisions[e.u].is_idle() && decisions[e.u] == decisions[e.v]) {
      component_edges[groups.find(e.u)].push_back(e);
    }
  }

  std::vector<KnowledgeState> next(states.begin(), states.end());
  std::vector<KnowledgeState> gathered;
  for (UserId root = 0; root < k; ++root) {
    const auto& group = members[root];
    if (group.size() < 2) continue;
    gathered.clear();
    for (UserId u : group) gathered.push_back(states[u]);
    const KnowledgeState merged = merge_knowledge(gathered, component_edges[root]);
    for (UserId u : group) next[u] = merged.as_seen_by(u);
  }
  return next;
}

RunResult run_discovery(const Scenario& scenario, const EngineConfig& config) {
  if (config.t_max < 1) throw DomainError("run_discovery: t_max must be >= 1");
  if (const auto violations = validate_scenario(scenario); !violations.empty()) {
    throw DomainError("run_discovery: invalid scenario (" +
                      std::string(to_string(violations.front().kind)) + ": " +
                      violations.front().detail + ")");
  }

  const int k = scenario.n_users();
  std::vector<KnowledgeState> states = initial_states(scenario);
  Hopper hopper(config.algorithm, scenario.n_channels, k, config.run_seed);

  RunResult result;
  bool have_ttd = all_complete(states, scenario);
  bool have_ttr = false;
  if (have_ttd) result.ttd = Outcome::at(0);

  std::vector<HopDecision> decisions(static_cast<std::size_t>(k));
  for (Slot t = 1; t <= config.t_max; ++t) {
    if (have_ttd && (have_ttr || !config.track_ttr)) break;

    hopper.begin_slot(t);
    for (UserId u = 0; u < k; ++u) {
      decisions[u] = hopper.decide(u, scenario.channel_sets[u], states[u]);
    }

    const bool coincidence = all_on_one_channel(decisions);
    result.per_slot_coincidence.push_back(coincidence);
    if (coincidence && !have_ttr) {
      have_ttr = true;
      result.ttr = Outcome::at(t);
    }
    // Complete states stay complete under any merge, so stepping stops here.
    if (!have_ttd) {
      states = step(scenario, states, decisions);
      if (all_complete(states, scenario)) {
        have_ttd = true;
        result.ttd = Outcome::at(t);
      }
    }
    result.slots_executed = t;
  }

  if (!have_ttd) result.ttd = Outcome::censored_at(config.t_max);
  if (!have_ttr) {
    result.ttr = Outcome::censored_at(config.track_ttr ? config.t_max : result.slots_executed);
  }
  return result;
}

std::vector<bool> run_pair_indicators(const ChannelSet& c1, const ChannelSet& c2,
                                      const AlgorithmSpec& algorithm, int n,
                                      std::uint64_t seed, Slot horizon) {
  const Scenario s = pair_scenario(c1, c2, n);
  std::vector<KnowledgeState> states = initial_states(s);
  Hopper hopper(algorithm, n, 2, seed);
  std::vector<bool> hits;
  hits.reserve(static_cast<std::size_t>(std::max<Slot>(horizon, 0)));
  std::vector<HopDecision> decisions(2);
  for (Slot t = 1; t <= horizon; ++t) {
    hopper.begin_slot(t);
    decisions[0] = hopper.decide(0, c1, states[0]);
    decisions[1] = hopper.decide(1, c2, states[1]);
    hits.push_back(all_on_one_channel(decisions));
    states = step(s, states, decisions);
  }
  return hits;
}

Outcome pair_ttr(const ChannelSet& c1, const ChannelSet& c2, const AlgorithmSpec& algorithm,
                 int n, std::uint64_t seed, Slot horizon) {
  const Scenario s = pair_scenario(c1, c2, n);
  const std::vector<KnowledgeState> states = initial_states(s);
  Hopper hopper(algorithm, n, 2, seed);
  // Until the first meeting neither user learns anything, so the initial
  // states are the right input for every slot we simulate.
  for (Slot t = 1; t <= horizon; ++t) {
    hopper.begin_slot(t);
    const HopDecision a = hopper.decide(0, c1, states[0]);
    const HopDecision b = hopper.decide(1, c2, states[1]);
    if (!a.is_idle() && a == b) return Outcome::at(t);
  }
  return Outcome::censored_at(horizon);
}

}  // namespace mtd
