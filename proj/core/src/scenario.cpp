#include "mtd/scenario.hpp"

namespace mtd {

const char* to_string(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::Structure: return "StructureViolation";
    case Violation::Kind::Connectivity: return "ConnectivityViolation";
    case Violation::Kind::CommonChannel: return "CommonChannelViolation";
  }
  return "UnknownViolation";
}

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  const int k = s.n_users();

  if (k < 1) {
    out.push_back({Violation::Kind::Structure, "scenario has no users"});
    return out;
  }
  if (s.channel_sets.size() != static_cast<std::size_t>(k)) {
    out.push_back({Violation::Kind::Structure, "channel_sets size differs from user count"});
    return out;
  }
  for (UserId u = 0; u < k; ++u) {
    const auto& c = s.channel_sets[u];
    if (c.empty()) {
      out.push_back({Violation::Kind::Structure, "user " + std::to_string(u) + " has no channels"});
    } else if (!c.within(s.n_channels)) {
      out.push_back({Violation::Kind::Structure,
                     "user " + std::to_string(u) + " has a channel outside 1..N"});
    }
  }

  if (!s.topology.is_connected()) {
    out.push_back({Violation::Kind::Connectivity, "topology is not connected"});
  }

  ChannelSet shared = intersect_all(s.channel_sets);
  if (shared.empty()) {
    out.push_back({Violation::Kind::CommonChannel, "users share no channel"});
  }
  if (!s.common_set.is_subset_of(shared)) {
    for (UserId u = 0; u < k; ++u) {
      if (!s.common_set.is_subset_of(s.channel_sets[u])) {
        out.push_back({Violation::Kind::CommonChannel,
                       "user " + std::to_string(u) + " lacks part of common_set " +
                           s.common_set.to_string()});
      }
    }
  }
  return out;
}

}  // namespace mtd
