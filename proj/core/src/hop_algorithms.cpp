#include "mtd/hop_algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "mtd/errors.hpp"

namespace mtd {

namespace {

int parse_positive(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 1) {
    throw ConfigError("algorithm: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

void require_slot(Slot t) {
  if (t < 1) throw DomainError("slot index must be >= 1");
}

}  // namespace

AlgorithmSpec AlgorithmSpec::parse(std::string_view text) {
  if (text == "sweep") return {AlgorithmKind::Sweep};
  if (text == "sweep-random") return {AlgorithmKind::SweepRandom};
  if (text == "sweep-forward") return {AlgorithmKind::SweepForward};
  if (text == "pi") return {AlgorithmKind::PiRandomized};
  if (text == "prs") return {AlgorithmKind::PseudoRandomSweep};
  if (text == "random") return {AlgorithmKind::RandomHop};
  constexpr std::string_view kStick = "stick:";
  if (text.starts_with(kStick)) {
    const auto args = text.substr(kStick.size());
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw ConfigError("algorithm: expected stick:n_th,k_th");
    }
    return {AlgorithmKind::StickTogether, parse_positive(args.substr(0, comma), "n_th"),
            parse_positive(args.substr(comma + 1), "k_th")};
  }
  throw ConfigError("algorithm: unknown '" + std::string(text) + "'");
}

std::string AlgorithmSpec::name() const {
  switch (kind) {
    case AlgorithmKind::Sweep: return "sweep";
    case AlgorithmKind::SweepRandom: return "sweep-random";
    case AlgorithmKind::SweepForward: return "sweep-forward";
    case AlgorithmKind::PiRandomized: return "pi";
    case AlgorithmKind::PseudoRandomSweep: return "prs";
    case AlgorithmKind::StickTogether:
      return "stick:" + std::to_string(n_th) + "," + std::to_string(k_th);
    case AlgorithmKind::RandomHop: return "random";
  }
  return "unknown";
}

bool AlgorithmSpec::bounded_by_n() const noexcept {
  return kind != AlgorithmKind::PiRandomized && kind != AlgorithmKind::RandomHop;
}

std::vector<AlgorithmSpec> default_algorithms() {
  return {
      {AlgorithmKind::Sweep},
      {AlgorithmKind::SweepRandom},
      {AlgorithmKind::SweepForward},
      {AlgorithmKind::PiRandomized},
      {AlgorithmKind::PseudoRandomSweep},
      {AlgorithmKind::StickTogether, 5, 30},
  };
}

Channel forward_pick(const ChannelSet& c, Channel target, int n) {
  if (c.empty()) throw DomainError("forward_pick: empty channel set");
  if (target < 1 || target > n) throw DomainError("forward_pick: target outside 1..N");
  // The smallest (c_i - target) mod n is the first member at or after
  // target, or the smallest member once the ring wraps.
  const auto members = c.members();
  const auto it = std::lower_bound(members.begin(), members.end(), target);
  return it != members.end() ? *it : members.front();
}

HopDecision sweep_basic(const ChannelSet& c, Slot t) {
  require_slot(t);
  const auto target = static_cast<Channel>(t);
  return c.contains(target) ? HopDecision::tune(target) : HopDecision::idle();
}

Channel sweep_random_replacement(const ChannelSet& c, Slot t, Rng& rng) {
  require_slot(t);
  const auto target = static_cast<Channel>(t);
  if (c.contains(target)) return target;
  return random_hop(c, rng);
}

Channel sweep_forward_replacement(const ChannelSet& c, Slot t, int n) {
  require_slot(t);
  return forward_pick(c, static_cast<Channel>(t), n);
}

Channel pi_algorithm(const ChannelSet& c, const Permutation& pi_t) {
  if (c.empty()) throw DomainError("pi_algorithm: empty channel set");
  Channel smallest_label = std::numeric_limits<Channel>::max();
  for (Channel x : c) smallest_label = std::min(smallest_label, pi_t(x));
  return pi_t.inverse(smallest_label);
}

Channel pseudo_random_sweep(const ChannelSet& c, const Permutation& pi, Slot t, int n) {
  require_slot(t);
  if (t > pi.size()) throw DomainError("pseudo_random_sweep: slot beyond the permutation");
  const Channel target = pi(static_cast<Channel>(t));
  return forward_pick(c, target, n);
}

Channel stick_together(const ChannelSet& c, const KnowledgeState& knowledge,
                       const Permutation& pi, Slot t, int n, int n_th, int k_th) {
  const ChannelSet& sticky = knowledge.common_channels();
  const bool use_sticky = sticky.size() >= static_cast<std::size_t>(n_th) &&
                          knowledge.known_user_count() >= static_cast<std::size_t>(k_th);
  return pseudo_random_sweep(use_sticky ? sticky : c, pi, t, n);
}

Channel random_hop(const ChannelSet& c, Rng& rng) {
  if (c.empty()) throw DomainError("random_hop: empty channel set");
  return c.members()[rng.below(c.size())];
}

Hopper::Hopper(AlgorithmSpec spec, int n_channels, int n_users, std::uint64_t run_seed)
    : spec_(spec),
      n_channels_(n_channels),
      run_seed_(run_seed),
      shared_perm_(Permutation::identity(n_channels)) {
  if (n_channels < 1) throw DomainError("Hopper: n_channels must be >= 1");
  if (spec_.kind == AlgorithmKind::StickTogether && (spec_.n_th < 1 || spec_.k_th < 1)) {
    throw DomainError("Hopper: stick-together thresholds must be >= 1");
  }
  if (spec_.kind == AlgorithmKind::PseudoRandomSweep ||
      spec_.kind == AlgorithmKind::StickTogether) {
    shared_perm_ = perm_from_seed(derive_seed(run_seed, {kSweepPermTag}), n_channels);
  }
  if (spec_.kind == AlgorithmKind::SweepRandom || spec_.kind == AlgorithmKind::RandomHop) {
    user_rngs_.reserve(static_cast<std::size_t>(n_users));
    for (int u = 0; u < n_users; ++u) {
      user_rngs_.emplace_back(
          derive_seed(run_seed, {kUserStreamTag, static_cast<std::uint64_t>(u)}));
    }
  }
}

void Hopper::begin_slot(Slot t) {
  require_slot(t);
  slot_ = t;
  if (spec_.kind == AlgorithmKind::PiRandomized) {
    slot_perm_ = perm_from_seed(
        derive_seed(run_seed_, {kPiSlotTag, static_cast<std::uint64_t>(t)}), n_channels_);
  }
}

HopDecision Hopper::decide(UserId user, const ChannelSet& c, const KnowledgeState& knowledge) {
  const Slot position = sweep_position(slot_, n_channels_);
  switch (spec_.kind) {
    case AlgorithmKind::Sweep:
      return sweep_basic(c, position);
    case AlgorithmKind::SweepRandom:
      return HopDecision::tune(sweep_random_replacement(c, position, user_rngs_.at(user)));
    case AlgorithmKind::SweepForward:
      return HopDecision::tune(sweep_forward_replacement(c, position, n_channels_));
    case AlgorithmKind::PiRandomized:
      return HopDecision::tune(pi_algorithm(c, *slot_perm_));
    case AlgorithmKind::PseudoRandomSweep:
      return HopDecision::tune(pseudo_random_sweep(c, shared_perm_, position, n_channels_));
    case AlgorithmKind::StickTogether:
      return HopDecision::tune(stick_together(c, knowledge, shared_perm_, position, n_channels_,
                                              spec_.n_th, spec_.k_th));
    case AlgorithmKind::RandomHop:
      return HopDecision::tune(random_hop(c, user_rngs_.at(user)));
  }
  throw IntegrityError("Hopper: unhandled algorithm kind");
}

}  // namespace mtd
