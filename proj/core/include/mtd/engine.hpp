#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtd/hop_algorithms.hpp"
#include "mtd/knowledge.hpp"
#include "mtd/scenario.hpp"

namespace mtd {

/// A slot count, or the horizon when the event was not observed.
struct Outcome {
  Slot slots = 0;
  bool censored = false;

  static constexpr Outcome at(Slot t) noexcept { return {t, false}; }
  static constexpr Outcome censored_at(Slot horizon) noexcept { return {horizon, true}; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct RunResult {
  Outcome ttd;
  Outcome ttr;
  Slot slots_executed = 0;
  /// Element t-1: every user tuned to one common channel at slot t.
  std::vector<bool> per_slot_coincidence;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct EngineConfig {
  Slot t_max = 0;
  AlgorithmSpec algorithm;
  std::uint64_t run_seed = 0;
  /// Keep running after discovery until the first all-user rendezvous
  /// (or t_max) so TTR is reported too.
  bool track_ttr = true;
};

/// N for algorithms bounded by the sweep period, 16N otherwise.
Slot default_horizon(const AlgorithmSpec& spec, int n_channels) noexcept;

std::vector<KnowledgeState> initial_states(const Scenario& scenario);

/// One synchronous slot: every connected component of users tuned to the
/// same channel merges its knowledge and learns its own induced edges.
/// Idle users and singleton components are left untouched.
std::vector<KnowledgeState> step(const Scenario& scenario,
                                 std::span<const KnowledgeState> states,
                                 std::span<const HopDecision> decisions);

/// Runs slots 1, 2, ... until every user's knowledge is complete and (when
/// tracked) TTR is known, or t_max is reached. Throws DomainError if the
/// scenario fails validation or t_max < 1.
RunResult run_discovery(const Scenario& scenario, const EngineConfig& config);

/// Two adjacent users for `horizon` slots; element t-1 is true iff both
/// tuned the same channel at slot t.
std::vector<bool> run_pair_indicators(const ChannelSet& c1, const ChannelSet& c2,
                                      const AlgorithmSpec& algorithm, int n,
                                      std::uint64_t seed, Slot horizon);

/// First slot at which the pair meets, censored at `horizon`.
Outcome pair_ttr(const ChannelSet& c1, const ChannelSet& c2, const AlgorithmSpec& algorithm,
                 int n, std::uint64_t seed, Slot horizon);

}  // namespace mtd
