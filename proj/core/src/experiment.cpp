#include "mtd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mtd/errors.hpp"

namespace mtd::harness {

namespace {

using nlohmann::json;

constexpr std::uint64_t kRunTag = 0x5255'4E00'0000'0000ULL;

template <typename T>
T take(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::desk() {
  ExperimentConfig c;
  c.scenario_params = gen::ScenarioParams::desk();
  c.n_scenarios = 100;
  c.mttd_batch_size = 10;
  // k_TH scaled with K (30 of 100 users -> 6 of 20).
  c.algorithms = default_algorithms();
  c.algorithms.back().k_th = 6;
  c.output_dir = "results";
  return c;
}

ExperimentConfig ExperimentConfig::paper() {
  ExperimentConfig c;
  c.scenario_params = gen::ScenarioParams::paper();
  c.n_scenarios = 1000;
  c.mttd_batch_size = 10;
  c.algorithms = default_algorithms();
  c.output_dir = "results-paper";
  return c;
}

void ExperimentConfig::validate() const {
  if (n_scenarios < 1) throw ConfigError("config: n_scenarios must be >= 1");
  if (mttd_batch_size < 1) throw ConfigError("config: mttd_batch_size must be >= 1");
  if (n_scenarios % mttd_batch_size != 0) {
    throw ConfigError("config: n_scenarios must be divisible by mttd_batch_size");
  }
  if (algorithms.empty()) throw ConfigError("config: algorithms must not be empty");
  if (n_common_grid.empty()) throw ConfigError("config: n_common_grid must not be empty");
  if (t_max < 0) throw ConfigError("config: t_max must be >= 0 (0 = per-algorithm default)");
  std::set<std::string> names;
  for (const auto& a : algorithms) {
    if (!names.insert(a.name()).second) {
      throw ConfigError("config: duplicate algorithm " + a.name());
    }
  }
  std::set<int> grid(n_common_grid.begin(), n_common_grid.end());
  if (grid.size() != n_common_grid.size()) {
    throw ConfigError("config: duplicate n_common_grid value");
  }
  for (int n_common : n_common_grid) {
    gen::ScenarioParams p = scenario_params;
    p.n_common = n_common;
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
}

Slot ExperimentConfig::horizon_for(const AlgorithmSpec& spec) const noexcept {
  return t_max > 0 ? t_max : default_horizon(spec, scenario_params.n_channels);
}

ExperimentConfig parse_config(const std::string& text, const ExperimentConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");

  ExperimentConfig c = base;
  auto& p = c.scenario_params;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_channels") p.n_channels = take<int>(j, "n_channels");
    else if (key == "n_users") p.n_users = take<int>(j, "n_users");
    else if (key == "area_side") p.area_side = take<double>(j, "area_side");
    else if (key == "su_range") p.su_range = take<double>(j, "su_range");
    else if (key == "n_pus") p.n_pus = take<int>(j, "n_pus");
    else if (key == "pu_range") p.pu_range = take<double>(j, "pu_range");
    else if (key == "max_resample_attempts") p.max_resample_attempts = take<int>(j, "max_resample_attempts");
    else if (key == "n_scenarios") c.n_scenarios = take<int>(j, "n_scenarios");
    else if (key == "mttd_batch_size") c.mttd_batch_size = take<int>(j, "mttd_batch_size");
    else if (key == "master_seed") c.master_seed = take<std::uint64_t>(j, "master_seed");
    else if (key == "t_max") c.t_max = take<Slot>(j, "t_max");
    else if (key == "n_common_grid") c.n_common_grid = take<std::vector<int>>(j, "n_common_grid");
    else if (key == "output_dir") c.output_dir = take<std::string>(j, "output_dir");
    else if (key == "algorithms") {
      c.algorithms.clear();
      for (const auto& name : take<std::vector<std::string>>(j, "algorithms")) {
        c.algorithms.push_back(AlgorithmSpec::parse(name));
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const ExperimentConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

std::string config_to_json(const ExperimentConfig& c) {
  const auto& p = c.scenario_params;
  std::vector<std::string> names;
  for (const auto& a : c.algorithms) names.push_back(a.name());
  json j = {
      {"n_channels", p.n_channels},
      {"n_users", p.n_users},
      {"area_side", p.area_side},
      {"su_range", p.su_range},
      {"n_pus", p.n_pus},
      {"pu_range", p.pu_range},
      {"max_resample_attempts", p.max_resample_attempts},
      {"n_scenarios", c.n_scenarios},
      {"algorithms", names},
      {"mttd_batch_size", c.mttd_batch_size},
      {"master_seed", c.master_seed},
      {"t_max", c.t_max},
      {"n_common_grid", c.n_common_grid},
      {"output_dir", c.output_dir.string()},
  };
  return j.dump(2) + "\n";
}

std::optional<EttdSummary> aggregate_ettd(std::span<const Slot> ttds) {
  if (ttds.empty()) return std::nullopt;
  const auto n = static_cast<double>(ttds.size());
  double sum = 0.0;
  for (Slot t : ttds) sum += static_cast<double>(t);
  const double mean = sum / n;
  double ss = 0.0;
  for (Slot t : ttds) ss += (static_cast<double>(t) - mean) * (static_cast<double>(t) - mean);
  const double se = ttds.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return EttdSummary{mean, se, ttds.size()};
}

double aggregate_mttd(std::span<const Slot> ttds, int batch_size) {
  if (batch_size < 1) throw ConfigError("aggregate_mttd: batch_size must be >= 1");
  if (ttds.empty() || ttds.size() % static_cast<std::size_t>(batch_size) != 0) {
    throw ConfigError("aggregate_mttd: length must be a positive multiple of batch_size");
  }
  const auto batch = static_cast<std::size_t>(batch_size);
  double sum = 0.0;
  for (std::size_t i = 0; i < ttds.size(); i += batch) {
    sum += static_cast<double>(*std::max_element(ttds.begin() + i, ttds.begin() + i + batch));
  }
  return sum / static_cast<double>(ttds.size() / batch);
}

void sort_records(std::vector<RunRecord>& records) {
  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.n_common, a.algorithm, a.scenario_index) <
           std::tie(b.n_common, b.algorithm, b.scenario_index);
  });
}

std::vector<AggregateRow> aggregate_records(std::span<const RunRecord> records, int batch_size) {
  std::map<std::pair<int, std::string>, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) groups[{r.n_common, r.algorithm}].push_back(&r);

  std::vector<AggregateRow> rows;
  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end(), [](const RunRecord* a, const RunRecord* b) {
      return a->scenario_index < b->scenario_index;
    });
    AggregateRow row;
    row.n_common = key.first;
    row.algorithm = key.second;
    row.run_count = static_cast<int>(group.size());
    std::vector<Slot> uncensored;
    std::vector<Slot> all;
    for (const RunRecord* r : group) {
      all.push_back(r->ttd.slots);
      if (r->ttd.censored) {
        ++row.censored_count;
      } else {
        uncensored.push_back(r->ttd.slots);
      }
    }
    if (const auto summary = aggregate_ettd(uncensored)) {
      row.ettd = summary->mean;
      row.ettd_stderr = summary->stderr_;
    }
    if (!all.empty() && all.size() % static_cast<std::size_t>(batch_size) == 0) {
      row.mttd = aggregate_mttd(all, batch_size);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, int n_common,
                              std::uint64_t index) noexcept {
  return derive_seed(master_seed, {kRunTag, static_cast<std::uint64_t>(n_common), index});
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();

  struct TaskOutput {
    std::vector<RunRecord> records;
    std::optional<ScenarioFailure> failure;
  };

  const auto per_grid = static_cast<std::size_t>(config.n_scenarios);
  const std::size_t total = config.n_common_grid.size() * per_grid;
  std::vector<TaskOutput> outputs(total);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto work = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const int n_common = config.n_common_grid[task / per_grid];
      const auto index = static_cast<std::uint64_t>(task % per_grid);
      TaskOutput& out = outputs[task];
      try {
        gen::ScenarioParams params = config.scenario_params;
        params.n_common = n_common;
        const Scenario scenario = gen::generate_scenario(params, config.master_seed, index);
        const std::uint64_t run_seed = derive_run_seed(config.master_seed, n_common, index);
        for (const auto& algorithm : config.algorithms) {
          const RunResult r =
              run_discovery(scenario, {config.horizon_for(algorithm), algorithm, run_seed, true});
          RunRecord rec;
          rec.scenario_index = index;
          rec.n_common = n_common;
          rec.algorithm = algorithm.name();
          rec.run_seed = run_seed;
          rec.ttd = r.ttd;
          if (!r.ttr.censored) rec.ttr = r.ttr.slots;
          out.records.push_back(std::move(rec));
        }
      } catch (const std::exception& e) {
        out.records.clear();
        out.failure = ScenarioFailure{n_common, index, e.what()};
      }
      const std::size_t finished = ++done;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(finished, total);
      }
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  }

  ExperimentResult result;
  for (auto& out : outputs) {
    for (auto& r : out.records) result.records.push_back(std::move(r));
    if (out.failure) result.failures.push_back(std::move(*out.failure));
  }
  sort_records(result.records);
  result.rows = aggregate_records(result.records, config.mttd_batch_size);
  return result;
}

}  // namespace mtd::harness
