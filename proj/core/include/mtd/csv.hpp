#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mtd/experiment.hpp"

namespace mtd::harness {

/// Header of the raw per-run table.
inline constexpr const char* kRawCsvHeader =
    "scenario_index,n_common,algorithm,run_seed,ttd,ttr,censored";
/// Header of the aggregate table.
inline constexpr const char* kAggregateCsvHeader =
    "algorithm,n_common,ettd,ettd_stderr,mttd,censored_count,runs";

/// One row per record in the given order; LF line endings.
std::string raw_csv(std::span<const RunRecord> records);
std::string aggregate_csv(std::span<const AggregateRow> rows);

/// Throws ConfigError on malformed input.
std::vector<RunRecord> parse_raw_csv(const std::string& text);
std::vector<AggregateRow> parse_aggregate_csv(const std::string& text);

/// RFC 4180 field splitting (quotes around fields containing commas).
std::vector<std::string> split_csv_line(const std::string& line);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mtd::harness
