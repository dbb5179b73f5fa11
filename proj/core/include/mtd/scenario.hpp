#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtd/channel_set.hpp"
#include "mtd/topology.hpp"

namespace mtd {

/// Seeds a scenario was sampled from. Absent for hand-built scenarios.
struct Provenance {
  std::uint64_t master_seed = 0;
  std::uint64_t scenario_index = 0;
  std::uint64_t topology_seed = 0;
  std::uint64_t channel_seed = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// One sampled world.
struct Scenario {
  int n_channels = 0;
  Topology topology;
  std::vector<ChannelSet> channel_sets;  // indexed by UserId
  ChannelSet common_set;
  std::optional<Provenance> provenance;

  int n_users() const noexcept { return topology.n_users(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Violation {
  enum class Kind {
    Structure,       // sizes or labels inconsistent
    Connectivity,    // topology not connected
    CommonChannel,   // no shared channel, or common_set not shared by all
  };
  Kind kind;
  std::string detail;
};

const char* to_string(Violation::Kind kind) noexcept;

/// Empty iff the topology is connected, the users' channel sets have a
/// non-empty intersection, and common_set lies inside it. Never throws.
std::vector<Violation> validate_scenario(const Scenario& s);

}  // namespace mtd
