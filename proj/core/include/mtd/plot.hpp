#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "mtd/experiment.hpp"

namespace mtd::harness {

enum class Metric { Ettd, Mttd };

/// "ettd" | "mttd". Throws ConfigError otherwise.
Metric parse_metric(std::string_view text);
const char* to_string(Metric m) noexcept;

/// Standalone SVG line chart: one polyline per algorithm, x = n_common,
/// y = metric. Throws DomainError when rows is empty.
std::string render_svg(std::span<const AggregateRow> rows, Metric metric);

void emit_plot(std::span<const AggregateRow> rows, Metric metric,
               const std::filesystem::path& path);

}  // namespace mtd::harness
