// mtd: scenario generation, experiment runs, verification suites and plots
// for multichannel topology discovery.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "mtd/csv.hpp"
#include "mtd/experiment.hpp"
#include "mtd/plot.hpp"
#include "mtd/scenario_gen.hpp"
#include "mtd/scenario_io.hpp"
#include "mtd/verify.hpp"

namespace fs = std::filesystem;
using namespace mtd;

namespace {

struct CommonFlags {
  std::string config_path;
  bool paper = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Experiment config (flat JSON)");
  cmd->add_flag("--paper", flags.paper, "Start from the full-scale preset (N=256, K=100, 1000 scenarios)");
  cmd->add_option("--seed", flags.seed, "Master seed (u64)");
  cmd->add_option("--out", flags.out, "Output directory");
}

harness::ExperimentConfig resolve_config(const CommonFlags& flags) {
  const auto base =
      flags.paper ? harness::ExperimentConfig::paper() : harness::ExperimentConfig::desk();
  auto config = flags.config_path.empty() ? base : harness::load_config(flags.config_path, base);
  if (flags.seed) config.master_seed = *flags.seed;
  if (!flags.out.empty()) config.output_dir = flags.out;
  config.validate();
  return config;
}

int cmd_gen(const CommonFlags& flags, std::optional<int> n_common, std::optional<int> count) {
  const auto config = resolve_config(flags);
  const fs::path dir = config.output_dir / "scenarios";
  fs::create_directories(dir);
  const std::vector<int> grid = n_common ? std::vector<int>{*n_common} : config.n_common_grid;
  const int total = count.value_or(config.n_scenarios);
  int failures = 0;
  for (int nc : grid) {
    auto params = config.scenario_params;
    params.n_common = nc;
    for (int i = 0; i < total; ++i) {
      try {
        const Scenario s = gen::generate_scenario(params, config.master_seed, i);
        const fs::path path =
            dir / ("scenario_nc" + std::to_string(nc) + "_" + std::to_string(i) + ".json");
        write_scenario(s, path);
      } catch (const std::exception& e) {
        ++failures;
        std::cerr << "scenario n_common=" << nc << " index=" << i << ": " << e.what() << "\n";
      }
    }
  }
  std::cout << "wrote scenarios to " << dir.string() << "\n";
  return failures == 0 ? 0 : 2;
}

int cmd_run(const CommonFlags& flags, unsigned threads, bool quiet) {
  const auto config = resolve_config(flags);
  fs::create_directories(config.output_dir);
  harness::write_text_file(config.output_dir / "config.json", harness::config_to_json(config));

  harness::RunOptions options;
  options.threads = threads;
  if (!quiet) {
    options.progress = [](std::size_t done, std::size_t total) {
      if (done % 10 == 0 || done == total) {
        std::cerr << "\r" << done << "/" << total << " scenarios" << std::flush;
        if (done == total) std::cerr << "\n";
      }
    };
  }
  const auto result = harness::run_experiment(config, options);

  harness::write_text_file(config.output_dir / "raw.csv", harness::raw_csv(result.records));
  harness::write_text_file(config.output_dir / "aggregate.csv",
                           harness::aggregate_csv(result.rows));
  if (!result.rows.empty()) {
    harness::emit_plot(result.rows, harness::Metric::Ettd, config.output_dir / "ettd.svg");
    harness::emit_plot(result.rows, harness::Metric::Mttd, config.output_dir / "mttd.svg");
  }
  std::cout << harness::aggregate_csv(result.rows);
  for (const auto& f : result.failures) {
    std::cerr << "scenario n_common=" << f.n_common << " index=" << f.scenario_index
              << " failed: " << f.message << "\n";
  }
  return result.failures.empty() ? 0 : 2;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = harness::verify_suite_names();
  } else {
    suites.push_back(suite);
  }
  bool ok = true;
  for (const auto& name : suites) {
    const auto report = harness::run_verify_suite(name, seed);
    harness::print_report(report, std::cout);
    ok = ok && report.passed();
  }
  return ok ? 0 : 1;
}

int cmd_plot(const std::string& csv_path, const std::string& metric_name, std::string out,
             int batch) {
  const auto metric = harness::parse_metric(metric_name);
  const std::string text = harness::read_text_file(csv_path);
  std::vector<harness::AggregateRow> rows;
  if (text.rfind(harness::kRawCsvHeader, 0) == 0) {
    rows = harness::aggregate_records(harness::parse_raw_csv(text), batch);
  } else {
    rows = harness::parse_aggregate_csv(text);
  }
  if (out.empty()) out = fs::path(csv_path).replace_extension("").string() + "_" + metric_name + ".svg";
  harness::emit_plot(rows, metric, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multichannel topology discovery simulator"};
  app.require_subcommand(1);

  CommonFlags gen_flags;
  std::optional<int> gen_n_common;
  std::optional<int> gen_count;
  auto* gen_cmd = app.add_subcommand("gen", "Generate scenarios as JSON files");
  add_common_flags(gen_cmd, gen_flags);
  gen_cmd->add_option("--n-common", gen_n_common, "Single n_common value instead of the grid");
  gen_cmd->add_option("--count", gen_count, "Scenarios per grid point");

  CommonFlags run_flags;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV and SVG output");
  add_common_flags(run_cmd, run_flags);
  run_cmd->add_option("--threads", threads, "Worker threads (output does not depend on this)");
  run_cmd->add_flag("--quiet", quiet, "No progress output");

  std::string suite;
  std::uint64_t verify_seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "theorem | oracles | decomposition | correlation | all")
      ->required();
  verify_cmd->add_option("--seed", verify_seed, "Seed for Monte Carlo checks");

  std::string csv_path;
  std::string metric;
  std::string plot_out;
  int plot_batch = 10;
  auto* plot_cmd = app.add_subcommand("plot", "Render an SVG from a raw or aggregate CSV");
  plot_cmd->add_option("csv", csv_path, "raw.csv or aggregate.csv")->required();
  plot_cmd->add_option("metric", metric, "ettd | mttd")->required();
  plot_cmd->add_option("--out", plot_out, "SVG path");
  plot_cmd->add_option("--batch", plot_batch, "MTTD batch size when re-aggregating raw CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return cmd_gen(gen_flags, gen_n_common, gen_count);
    if (*run_cmd) return cmd_run(run_flags, threads, quiet);
    if (*verify_cmd) return cmd_verify(suite, verify_seed);
    if (*plot_cmd) return cmd_plot(csv_path, metric, plot_out, plot_batch);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
