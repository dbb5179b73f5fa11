#include "mtd/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtd/errors.hpp"

namespace mtd {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "mtd-scenario";
constexpr int kVersion = 1;

json channels_to_json(const ChannelSet& c) {
  return json(std::vector<Channel>(c.begin(), c.end()));
}

ChannelSet channels_from_json(const json& j) {
  return ChannelSet(j.get<std::vector<Channel>>());
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["n_channels"] = s.n_channels;
  j["n_users"] = s.n_users();
  json edges = json::array();
  for (const Edge& e : s.topology.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  json sets = json::array();
  for (const auto& c : s.channel_sets) sets.push_back(channels_to_json(c));
  j["channel_sets"] = std::move(sets);
  j["common_set"] = channels_to_json(s.common_set);
  if (s.provenance) {
    j["provenance"] = {
        {"master_seed", s.provenance->master_seed},
        {"scenario_index", s.provenance->scenario_index},
        {"topology_seed", s.provenance->topology_seed},
        {"channel_seed", s.provenance->channel_seed},
    };
  }
  return j.dump(1) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      throw ConfigError("scenario: unexpected format tag");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw ConfigError("scenario: unsupported version");
    }
    Scenario s;
    s.n_channels = j.at("n_channels").get<int>();
    const int k = j.at("n_users").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) throw ConfigError("scenario: edge must have two endpoints");
      edges.push_back(Edge{e[0].get<UserId>(), e[1].get<UserId>()});
    }
    s.topology = Topology(k, std::move(edges));
    for (const auto& c : j.at("channel_sets")) s.channel_sets.push_back(channels_from_json(c));
    s.common_set = channels_from_json(j.at("common_set"));
    if (j.contains("provenance")) {
      const auto& p = j["provenance"];
      s.provenance = Provenance{p.at("master_seed").get<std::uint64_t>(),
                                p.at("scenario_index").get<std::uint64_t>(),
                                p.at("topology_seed").get<std::uint64_t>(),
                                p.at("channel_seed").get<std::uint64_t>()};
    }
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

void write_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << scenario_to_json(s);
}

Scenario read_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace mtd
