#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtd/channel_set.hpp"
#include "mtd/knowledge.hpp"
#include "mtd/permutation.hpp"
#include "mtd/rng.hpp"

namespace mtd {

/// Time-slot index, 1-based.
using Slot = std::int64_t;

/// Tuned channel, or idle (radio asleep) when channel == 0.
struct HopDecision {
  Channel channel = 0;

  static constexpr HopDecision tune(Channel c) noexcept { return {c}; }
  static constexpr HopDecision idle() noexcept { return {0}; }
  constexpr bool is_idle() const noexcept { return channel == 0; }

  friend bool operator==(const HopDecision&, const HopDecision&) = default;
};

enum class AlgorithmKind {
  Sweep,
  SweepRandom,
  SweepForward,
  PiRandomized,
  PseudoRandomSweep,
  StickTogether,
  RandomHop,
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Sweep;
  int n_th = 0;  // StickTogether only
  int k_th = 0;  // StickTogether only

  /// sweep | sweep-random | sweep-forward | pi | prs | stick:n_th,k_th | random
  /// Throws ConfigError on anything else.
  static AlgorithmSpec parse(std::string_view text);

  /// Inverse of parse.
  std::string name() const;

  /// Kinds whose sequences guarantee discovery within N slots.
  bool bounded_by_n() const noexcept;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

/// The six algorithms compared in the experiments, with n_TH=5, k_TH=30.
std::vector<AlgorithmSpec> default_algorithms();

/// Maps any slot onto the sweep period: ((t-1) mod n) + 1.
constexpr Channel sweep_position(Slot t, int n) noexcept {
  return static_cast<Channel>((t - 1) % n) + 1;
}

/// The member minimizing (c_i - target) mod n, i.e. the first available
/// channel at or after `target` on the n-ring.
Channel forward_pick(const ChannelSet& c, Channel target, int n);

HopDecision sweep_basic(const ChannelSet& c, Slot t);
Channel sweep_random_replacement(const ChannelSet& c, Slot t, Rng& rng);
Channel sweep_forward_replacement(const ChannelSet& c, Slot t, int n);

/// Relabels c through pi_t, takes the smallest label, maps it back.
Channel pi_algorithm(const ChannelSet& c, const Permutation& pi_t);

/// pi(t) when available, else forward replacement from pi(t).
Channel pseudo_random_sweep(const ChannelSet& c, const Permutation& pi, Slot t, int n);

/// Threshold-based stick-together: sweeps the intersection of all known
/// users' channel sets once it has at least n_th channels and at least
/// k_th users are known; otherwise sweeps the user's own set.
Channel stick_together(const ChannelSet& c, const KnowledgeState& knowledge,
                       const Permutation& pi, Slot t, int n, int n_th, int k_th);

Channel random_hop(const ChannelSet& c, Rng& rng);

/// Per-run decision maker for one algorithm.
///
/// Shared randomness (the pseudo-random sweep permutation, the per-slot
/// Pi permutations) is derived from run_seed; per-user streams from
/// (run_seed, user).
class Hopper {
 public:
  Hopper(AlgorithmSpec spec, int n_channels, int n_users, std::uint64_t run_seed);

  /// Must be called once per slot, in order, before decide().
  void begin_slot(Slot t);

  HopDecision decide(UserId user, const ChannelSet& c, const KnowledgeState& knowledge);

  const AlgorithmSpec& spec() const noexcept { return spec_; }

 private:
  AlgorithmSpec spec_;
  int n_channels_;
  std::uint64_t run_seed_;
  Slot slot_ = 0;
  Permutation shared_perm_;
  std::optional<Permutation> slot_perm_;
  std::vector<Rng> user_rngs_;
};

/// Seed labels used with derive_seed.
inline constexpr std::uint64_t kSweepPermTag = 0x5052'5357'4545'5000ULL;
inline constexpr std::uint64_t kPiSlotTag = 0x5049'534C'4F54'0000ULL;
inline constexpr std::uint64_t kUserStreamTag = 0x5553'4552'0000'0000ULL;

}  // namespace mtd
