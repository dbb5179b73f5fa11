#include "mtd/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mtd/errors.hpp"

namespace mtd::harness {

namespace {

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(std::optional<double> v) {
  if (!v) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

template <typename T>
T parse_number(const std::string& field, const char* what) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError(std::string("csv: bad ") + what + " '" + field + "'");
  }
  return value;
}

std::optional<double> parse_optional_double(const std::string& field, const char* what) {
  if (field.empty()) return std::nullopt;
  return parse_number<double>(field, what);
}

bool parse_bool(const std::string& field) {
  if (field == "true") return true;
  if (field == "false") return false;
  throw ConfigError("csv: expected true/false, got '" + field + "'");
}

std::vector<std::string> data_lines(const std::string& text, const char* header) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      if (line != header) throw ConfigError("csv: unexpected header '" + line + "'");
      first = false;
      continue;
    }
    if (!line.empty()) lines.push_back(line);
  }
  if (first) throw ConfigError("csv: empty input");
  return lines;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw ConfigError("csv: unterminated quote");
  fields.push_back(std::move(current));
  return fields;
}

std::string raw_csv(std::span<const RunRecord> records) {
  std::string out = kRawCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.scenario_index);
    out += ',';
    out += std::to_string(r.n_common);
    out += ',';
    out += quote_if_needed(r.algorithm);
    out += ',';
    out += std::to_string(r.run_seed);
    out += ',';
    out += std::to_string(r.ttd.slots);
    out += ',';
    out += std::to_string(r.ttr ? *r.ttr : Slot{-1});
    out += ',';
    out += r.ttd.censored ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::vector<RunRecord> parse_raw_csv(const std::string& text) {
  std::vector<RunRecord> records;
  for (const auto& line : data_lines(text, kRawCsvHeader)) {
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw ConfigError("csv: expected 7 fields in '" + line + "'");
    RunRecord r;
    r.scenario_index = parse_number<std::uint64_t>(f[0], "scenario_index");
    r.n_common = parse_number<int>(f[1], "n_common");
    r.algorithm = f[2];
    r.run_seed = parse_number<std::uint64_t>(f[3], "run_seed");
    r.ttd = Outcome{parse_number<Slot>(f[4], "ttd"), parse_bool(f[6])};
    const Slot ttr = parse_number<Slot>(f[5], "ttr");
    if (ttr >= 0) r.ttr = ttr;
    records.push_back(std::move(r));
  }
  return records;
}

std::string aggregate_csv(std::span<const AggregateRow> rows) {
  std::string out = kAggregateCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += quote_if_needed(r.algorithm);
    out += ',';
    out += std::to_string(r.n_common);
    out += ',';
    out += format_double(r.ettd);
    out += ',';
    out += format_double(r.ettd_stderr);
    out += ',';
    out += format_double(r.mttd);
    out += ',';
    out += std::to_string(r.censored_count);
    out += ',';
    out += std::to_string(r.run_count);
    out += '\n';
  }
  return out;
}

std::vector<AggregateRow> parse_aggregate_csv(const std::string& text) {
  std::vector<AggregateRow> rows;
  for (const auto& line : data_lines(text, kAggregateCsvHeader)) {
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw ConfigError("csv: expected 7 fields in '" + line + "'");
    AggregateRow r;
    r.algorithm = f[0];
    r.n_common = parse_number<int>(f[1], "n_common");
    r.ettd = parse_optional_double(f[2], "ettd");
    r.ettd_stderr = parse_optional_double(f[3], "ettd_stderr");
    r.mttd = parse_optional_double(f[4], "mttd");
    r.censored_count = parse_number<int>(f[5], "censored_count");
    r.run_count = parse_number<int>(f[6], "runs");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace mtd::harness
