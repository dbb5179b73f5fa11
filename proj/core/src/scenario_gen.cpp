#include "mtd/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "mtd/errors.hpp"
#include "mtd/rng.hpp"

namespace mtd::gen {

namespace {

constexpr std::uint64_t kTopologyTag = 0x544F'504F'0000'0000ULL;
constexpr std::uint64_t kChannelTag = 0x4348'414E'0000'0000ULL;

Point random_point(Rng& rng, double side) {
  const double x = rng.uniform01() * side;
  const double y = rng.uniform01() * side;
  return {x, y};
}

}  // namespace

ScenarioParams ScenarioParams::paper() {
  ScenarioParams p;
  p.n_channels = 256;
  p.n_users = 100;
  p.area_side = 1000.0;
  p.su_range = 250.0;
  p.n_pus = 50;
  p.pu_range = 500.0;
  p.n_common = 8;
  return p;
}

ScenarioParams ScenarioParams::desk() {
  ScenarioParams p = paper();
  p.n_channels = 64;
  p.n_users = 20;
  p.n_common = 4;
  return p;
}

void ScenarioParams::validate() const {
  if (n_channels < 1) throw DomainError("ScenarioParams: n_channels must be >= 1");
  if (n_users < 1) throw DomainError("ScenarioParams: n_users must be >= 1");
  if (n_common < 1 || n_common > n_channels) {
    throw DomainError("ScenarioParams: n_common must lie in [1, n_channels]");
  }
  if (!(area_side > 0.0)) throw DomainError("ScenarioParams: area_side must be > 0");
  if (!(su_range > 0.0) || !(pu_range > 0.0)) {
    throw DomainError("ScenarioParams: ranges must be > 0");
  }
  if (n_pus < 0) throw DomainError("ScenarioParams: n_pus must be >= 0");
  if (max_resample_attempts < 1) {
    throw DomainError("ScenarioParams: max_resample_attempts must be >= 1");
  }
}

double distance(Point a, Point b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Topology geometric_graph(std::span<const Point> positions, double range) {
  std::vector<Edge> edges;
  const int k = static_cast<int>(positions.size());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (distance(positions[i], positions[j]) <= range) edges.push_back({i, j});
    }
  }
  return Topology(k, std::move(edges));
}

TopologySample generate_topology(const ScenarioParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  std::vector<Point> positions(params.n_users);
  for (int attempt = 1; attempt <= params.max_resample_attempts; ++attempt) {
    for (auto& p : positions) p = random_point(rng, params.area_side);
    Topology topology = geometric_graph(positions, params.su_range);
    if (topology.is_connected()) {
      return {std::move(topology), Placement{positions, {}}, attempt};
    }
  }
  throw GenerationError("generate_topology: no connected placement after " +
                        std::to_string(params.max_resample_attempts) + " attempts");
}

ChannelAssignment assign_channels_detailed(const ScenarioParams& params,
                                           const Topology& topology,
                                           const Placement& placement,
                                           std::uint64_t seed) {
  params.validate();
  if (placement.su_positions.size() != static_cast<std::size_t>(topology.n_users())) {
    throw DomainError("assign_channels: placement does not match topology");
  }
  const int n = params.n_channels;
  Rng rng(seed);

  ChannelAssignment out;
  ChannelSet common = [&] {
    // Partial Fisher-Yates: first n_common entries are a uniform subset.
    std::vector<Channel> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    for (int i = 0; i < params.n_common; ++i) {
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(params.n_common);
    return ChannelSet(std::move(pool));
  }();
  const ChannelSet pu_pool = set_difference(ChannelSet::full(n), common);

  out.pu_positions.resize(params.n_pus);
  for (auto& p : out.pu_positions) p = random_point(rng, params.area_side);

  const auto& sus = placement.su_positions;
  for (int i = 0; i < params.n_pus; ++i) {
    const bool covers_any = std::any_of(sus.begin(), sus.end(), [&](Point su) {
      return distance(out.pu_positions[i], su) <= params.pu_range;
    });
    if (covers_any) out.surviving_pus.push_back(i);
  }

  const std::size_t survivors = out.surviving_pus.size();
  if (survivors == 0 && !pu_pool.empty()) {
    std::clog << "assign_channels: no PU covers any SU; every SU keeps all " << n
              << " channels\n";
  }
  std::vector<std::vector<Channel>> dealt(survivors);
  if (survivors > 0) {
    std::size_t next = 0;
    for (Channel c : pu_pool) {
      dealt[next].push_back(c);
      next = (next + 1) % survivors;
    }
  }
  out.pu_channels.reserve(survivors);
  for (auto& list : dealt) out.pu_channels.emplace_back(std::move(list));

  Scenario& s = out.scenario;
  s.n_channels = n;
  s.topology = topology;
  s.common_set = common;
  s.channel_sets.reserve(sus.size());
  for (const Point& su : sus) {
    std::vector<char> blocked(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < survivors; ++i) {
      if (distance(out.pu_positions[out.surviving_pus[i]], su) <= params.pu_range) {
        for (Channel c : out.pu_channels[i]) blocked[c] = 1;
      }
    }
    std::vector<Channel> available;
    for (Channel c = 1; c <= n; ++c) {
      if (!blocked[c]) available.push_back(c);
    }
    s.channel_sets.emplace_back(std::move(available));
  }
  return out;
}

Scenario assign_channels(const ScenarioParams& params, const Topology& topology,
                         const Placement& placement, std::uint64_t seed) {
  return assign_channels_detailed(params, topology, placement, seed).scenario;
}

ScenarioSeeds derive_scenario_seeds(std::uint64_t master_seed, std::uint64_t index,
                                    int n_common) noexcept {
  return {derive_seed(master_seed, {kTopologyTag, index}),
          derive_seed(master_seed, {kChannelTag, static_cast<std::uint64_t>(n_common), index})};
}

Scenario generate_scenario(const ScenarioParams& params, std::uint64_t master_seed,
                           std::uint64_t index) {
  const ScenarioSeeds seeds = derive_scenario_seeds(master_seed, index, params.n_common);
  TopologySample sample = generate_topology(params, seeds.topology_seed);
  Scenario s = assign_channels(params, sample.topology, sample.placement, seeds.channel_seed);
  s.provenance = Provenance{master_seed, index, seeds.topology_seed, seeds.channel_seed};
  return s;
}

}  // namespace mtd::gen
