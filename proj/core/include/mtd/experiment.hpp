#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtd/engine.hpp"
#include "mtd/hop_algorithms.hpp"
#include "mtd/scenario_gen.hpp"

namespace mtd::harness {

struct ExperimentConfig {
  gen::ScenarioParams scenario_params;  // n_common is taken from the grid
  int n_scenarios = 100;
  std::vector<AlgorithmSpec> algorithms = default_algorithms();
  int mttd_batch_size = 10;
  std::uint64_t master_seed = 1;
  Slot t_max = 0;  // 0: per-algorithm default_horizon
  std::vector<int> n_common_grid{2, 4, 8, 16, 32};
  std::filesystem::path output_dir = "results";

  /// N=64, K=20, 100 scenarios, batches of 10.
  static ExperimentConfig desk();
  /// N=256, K=100, 1000 scenarios in 100 batches of 10.
  static ExperimentConfig paper();

  /// Throws ConfigError on any inconsistency.
  void validate() const;

  Slot horizon_for(const AlgorithmSpec& spec) const noexcept;
};

/// Flat JSON object whose keys are the ExperimentConfig fields, with the
/// ScenarioParams fields inlined. Missing keys keep `base` values; unknown
/// keys are errors.
ExperimentConfig parse_config(const std::string& text,
                              const ExperimentConfig& base = ExperimentConfig::desk());
ExperimentConfig load_config(const std::filesystem::path& path,
                             const ExperimentConfig& base = ExperimentConfig::desk());
std::string config_to_json(const ExperimentConfig& config);

struct RunRecord {
  std::uint64_t scenario_index = 0;
  int n_common = 0;
  std::string algorithm;
  std::uint64_t run_seed = 0;
  Outcome ttd;
  std::optional<Slot> ttr;  // nullopt: no all-user rendezvous within the horizon

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct EttdSummary {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;
};

/// Mean and standard error of the mean. nullopt for an empty list.
std::optional<EttdSummary> aggregate_ettd(std::span<const Slot> ttds);

/// Mean of the maxima of consecutive batches. Throws ConfigError if the
/// length is zero or not a multiple of batch_size.
double aggregate_mttd(std::span<const Slot> ttds, int batch_size);

struct AggregateRow {
  std::string algorithm;
  int n_common = 0;
  std::optional<double> ettd;
  std::optional<double> ettd_stderr;
  std::optional<double> mttd;
  int censored_count = 0;
  int run_count = 0;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

/// Sorts records into canonical order: (n_common, algorithm, scenario_index).
void sort_records(std::vector<RunRecord>& records);

/// Groups by (n_common, algorithm). Censored TTDs are left out of the ETTD
/// mean and enter the batch maxima at their horizon value.
std::vector<AggregateRow> aggregate_records(std::span<const RunRecord> records,
                                            int batch_size);

struct ScenarioFailure {
  int n_common = 0;
  std::uint64_t scenario_index = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // canonical order
  std::vector<AggregateRow> rows;
  std::vector<ScenarioFailure> failures;
};

struct RunOptions {
  unsigned threads = 1;
  /// Called after each finished scenario with (done, total). May be empty.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Every (n_common, scenario, algorithm) triple. Output is independent of
/// the thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Seed for the run of any algorithm on scenario `index` at `n_common`.
/// Shared across algorithms so comparisons are paired.
std::uint64_t derive_run_seed(std::uint64_t master_seed, int n_common,
                              std::uint64_t index) noexcept;

}  // namespace mtd::harness
