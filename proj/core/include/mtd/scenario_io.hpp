#pragma once

#include <filesystem>
#include <string>

#include "mtd/scenario.hpp"

namespace mtd {

/// JSON encoding of a scenario. See docs/file_formats.md.
std::string scenario_to_json(const Scenario& s);

/// Throws ConfigError on malformed input.
Scenario scenario_from_json(const std::string& text);

void write_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario read_scenario(const std::filesystem::path& path);

}  // namespace mtd
