#pragma once

#include <cstdint>
#include <vector>

#include "mtd/scenario.hpp"

namespace mtd::gen {

/// Geometry and spectrum parameters for one family of scenarios.
struct ScenarioParams {
  int n_channels = 64;
  int n_users = 20;
  double area_side = 1000.0;   // meters
  double su_range = 250.0;     // meters
  int n_pus = 50;
  double pu_range = 500.0;     // meters
  int n_common = 4;
  int max_resample_attempts = 10000;

  /// N=256, K=100, 1000 m square, 250 m / 500 m ranges, 50 PUs.
  static ScenarioParams paper();
  /// N=64, K=20, same geometry as paper().
  static ScenarioParams desk();

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b) noexcept;

struct Placement {
  std::vector<Point> su_positions;
  std::vector<Point> pu_positions;
};

/// Edges between every pair of SUs within `range` (inclusive).
Topology geometric_graph(std::span<const Point> positions, double range);

struct TopologySample {
  Topology topology;
  Placement placement;  // pu_positions left empty
  int attempts = 0;
};

/// Uniform SU placement in the square, resampled as a whole until the
/// range graph is connected. Throws GenerationError after
/// params.max_resample_attempts failures.
TopologySample generate_topology(const ScenarioParams& params, std::uint64_t seed);

/// Channel assignment details, kept for inspection and tests.
struct ChannelAssignment {
  Scenario scenario;
  std::vector<Point> pu_positions;        // all sampled PUs
  std::vector<int> surviving_pus;         // indices into pu_positions, ascending
  std::vector<ChannelSet> pu_channels;    // parallel to surviving_pus
};

/// Samples c_com, places PUs, drops PUs with no SU in range, deals the
/// remaining channels round-robin to the surviving PUs, and blocks each
/// PU's channels for every SU it covers.
ChannelAssignment assign_channels_detailed(const ScenarioParams& params,
                                           const Topology& topology,
                                           const Placement& placement,
                                           std::uint64_t seed);

Scenario assign_channels(const ScenarioParams& params, const Topology& topology,
                         const Placement& placement, std::uint64_t seed);

/// Per-scenario seeds derived from a master seed. The topology seed depends
/// only on the index so every n_common grid point reuses the same
/// topologies; the channel seed also depends on n_common.
struct ScenarioSeeds {
  std::uint64_t topology_seed = 0;
  std::uint64_t channel_seed = 0;
};

ScenarioSeeds derive_scenario_seeds(std::uint64_t master_seed, std::uint64_t index,
                                    int n_common) noexcept;

/// generate_topology + assign_channels under derived seeds, with provenance.
Scenario generate_scenario(const ScenarioParams& params, std::uint64_t master_seed,
                           std::uint64_t index);

}  // namespace mtd::gen
