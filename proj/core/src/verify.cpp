#include "mtd/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <json.hpp>

#include "mtd/analytics.hpp"
#include "mtd/engine.hpp"
#include "mtd/errors.hpp"

namespace mtd::harness {

namespace {

using namespace mtd::analytics;

constexpr std::uint64_t kChainTag = 0x4348'4149'4E00'0000ULL;
constexpr std::uint64_t kPairTag = 0x5041'4952'0000'0000ULL;
constexpr std::uint64_t kDrawTag = 0x4452'4157'0000'0000ULL;
constexpr std::uint64_t kBootTag = 0x424F'4F54'0000'0000ULL;

// First success time of a stationary chain, simulated trial by trial.
double simulate_mean_first_success(const MarkovParams& params, int samples, Rng& rng) {
  double total = 0.0;
  for (int i = 0; i < samples; ++i) {
    Slot t = 1;
    bool x = rng.bernoulli(params.p());
    while (!x) {
      ++t;
      x = !rng.bernoulli(params.p00());
    }
    total += static_cast<double>(t);
  }
  return total / samples;
}

std::vector<double> p00_grid(double p, int points) {
  const double lo = MarkovParams::min_p00(p);
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(lo + (1.0 - lo) * i / points);
  return grid;
}

void theorem_suite(VerifyReport& report, std::uint64_t seed) {
  for (const double p : {0.1, 0.25, 0.5}) {
    const auto grid = p00_grid(p, 20);
    std::vector<std::pair<double, double>> curve;  // (omega, E[T])
    for (double p00 : grid) {
      const MarkovParams params(p, p00);
      curve.emplace_back(markov_correlation(params), markov_expected_T(params));
    }
    std::sort(curve.begin(), curve.end());
    double min_step = INFINITY;
    bool omega_distinct = true;
    for (std::size_t i = 1; i < curve.size(); ++i) {
      omega_distinct = omega_distinct && curve[i].first > curve[i - 1].first;
      min_step = std::min(min_step, curve[i].second - curve[i - 1].second);
    }
    report.checks.push_back({"monotone_in_omega[p=" + std::to_string(p) + "]",
                             omega_distinct && min_step > 0.0, min_step, 0.0, 0.0,
                             "smallest increase of E[T] between adjacent omega values"});

    Rng rng(derive_seed(seed, {kChainTag, static_cast<std::uint64_t>(p * 1000)}));
    double worst = 0.0;
    for (double p00 : grid) {
      const MarkovParams params(p, p00);
      const double mc = simulate_mean_first_success(params, 1'000'000, rng);
      worst = std::max(worst, std::abs(mc / markov_expected_T(params) - 1.0));
    }
    report.checks.push_back({"monte_carlo_E[T][p=" + std::to_string(p) + "]", worst <= 0.01,
                             worst, 0.0, 0.01, "worst relative error over the p00 grid"});

    double worst_tail = 0.0;
    for (double p00 : grid) {
      const MarkovParams params(p, p00);
      constexpr Slot kCut = 200;
      double sum = 0.0;
      for (Slot t = 0; t <= kCut; ++t) sum += markov_tail(params, t);
      sum += (1.0 - p) * std::pow(p00, static_cast<double>(kCut)) / (1.0 - p00);
      worst_tail = std::max(worst_tail, std::abs(sum / markov_expected_T(params) - 1.0));
    }
    report.checks.push_back({"tail_sum[p=" + std::to_string(p) + "]", worst_tail <= 1e-12,
                             worst_tail, 0.0, 1e-12, "tail sum plus geometric remainder"});
  }
}

double mean_pair_ttr(const AlgorithmSpec& spec, int runs, std::uint64_t seed) {
  constexpr int kN = 64;
  double total = 0.0;
  for (int i = 0; i < runs; ++i) {
    Rng rng(derive_seed(seed, {kPairTag, static_cast<std::uint64_t>(i)}));
    const auto [c1, c2] = random_set_pair(kN, 8, 8, 4, rng);
    const Outcome o = pair_ttr(c1, c2, spec, kN, rng(), 1'000'000);
    total += static_cast<double>(o.slots);
  }
  return total / runs;
}

void oracles_suite(VerifyReport& report, std::uint64_t seed) {
  const double pi_expected = ettr_oracle_pi(ChannelSet{1, 2, 3, 4, 5, 6, 7, 8},
                                            ChannelSet{5, 6, 7, 8, 9, 10, 11, 12})
                                 .value();
  const double pi_mean = mean_pair_ttr({AlgorithmKind::PiRandomized}, 100'000, seed);
  report.checks.push_back({"pi_ettr_inverse_jaccard",
                           std::abs(pi_mean / pi_expected - 1.0) <= 0.03, pi_mean, pi_expected,
                           0.03, "N=64, n1=n2=8, n12=4"});

  const double random_expected = ettr_oracle_random(8, 8, 4);
  const double random_mean = mean_pair_ttr({AlgorithmKind::RandomHop}, 100'000, seed + 1);
  report.checks.push_back({"random_ettr_n1n2_over_n12",
                           std::abs(random_mean / random_expected - 1.0) <= 0.03, random_mean,
                           random_expected, 0.03, "N=64, n1=n2=8, n12=4"});
}

ChannelSet from_mask(unsigned mask, int n) {
  std::vector<Channel> members;
  for (int c = 1; c <= n; ++c) {
    if (mask & (1u << (c - 1))) members.push_back(c);
  }
  return ChannelSet(std::move(members));
}

void decomposition_suite(VerifyReport& report) {
  constexpr int kN = 8;
  const AlgorithmSpec sweep_forward{AlgorithmKind::SweepForward};
  int pairs = 0;
  int count_failures = 0;
  int simulation_failures = 0;
  for (unsigned a = 1; a < (1u << kN); ++a) {
    for (unsigned b = 1; b < (1u << kN); ++b) {
      if ((a & b) == 0) continue;
      ++pairs;
      const ChannelSet c1 = from_mask(a, kN);
      const ChannelSet c2 = from_mask(b, kN);
      const auto n1 = static_cast<std::size_t>(std::popcount(a));
      const auto n2 = static_cast<std::size_t>(std::popcount(b));
      const auto n12 = static_cast<std::size_t>(std::popcount(a & b));
      const RingDecomposition rd = ring_decompose(c1, c2, kN);
      if (rd.segments.size() != n1 + n2 - n12 || rd.count(SegmentType::Rendezvous) != n12) {
        ++count_failures;
      }
      const auto hits = run_pair_indicators(c1, c2, sweep_forward, kN, 0, kN);
      for (Channel t = 1; t <= kN; ++t) {
        const bool in_rendezvous = rd.segment_of(t).type == SegmentType::Rendezvous;
        if (hits[t - 1] != in_rendezvous) {
          ++simulation_failures;
          break;
        }
      }
    }
  }
  report.checks.push_back({"segment_counts", count_failures == 0, double(count_failures), 0.0,
                           0.0, std::to_string(pairs) + " ordered pairs at N=8"});
  report.checks.push_back({"sweep_forward_matches_segments", simulation_failures == 0,
                           double(simulation_failures), 0.0, 0.0,
                           std::to_string(pairs) + " ordered pairs at N=8"});
}

void correlation_suite(VerifyReport& report, std::uint64_t seed) {
  constexpr int kN = 256;
  constexpr int kDraws = 500;
  constexpr int kBootstrap = 2000;
  std::vector<Lag1Accumulator> sequential(kDraws);
  std::vector<Lag1Accumulator> pseudo_random(kDraws);
  for (int i = 0; i < kDraws; ++i) {
    Rng rng(derive_seed(seed, {kDrawTag, static_cast<std::uint64_t>(i)}));
    const auto [c1, c2] = random_set_pair(kN, 16, 16, 4, rng);
    sequential[i].add(
        run_pair_indicators(c1, c2, {AlgorithmKind::SweepForward}, kN, rng(), kN));
    pseudo_random[i].add(
        run_pair_indicators(c1, c2, {AlgorithmKind::PseudoRandomSweep}, kN, rng(), kN));
  }
  auto pooled = [](const std::vector<Lag1Accumulator>& parts) {
    Lag1Accumulator all;
    for (const auto& p : parts) all.merge(p);
    return all.correlation().value_or(NAN);
  };

  const double r_seq = pooled(sequential);
  Rng boot(derive_seed(seed, {kBootTag}));
  std::vector<double> resampled;
  resampled.reserve(kBootstrap);
  for (int b = 0; b < kBootstrap; ++b) {
    Lag1Accumulator acc;
    for (int i = 0; i < kDraws; ++i) acc.merge(sequential[boot.below(kDraws)]);
    resampled.push_back(acc.correlation().value_or(NAN));
  }
  std::sort(resampled.begin(), resampled.end());
  const double lower = resampled[static_cast<std::size_t>(0.01 * kBootstrap)];
  report.checks.push_back({"sweep_forward_positive_lag1", lower > 0.0, lower, 0.0, 0.0,
                           "1% bootstrap quantile; point estimate " + std::to_string(r_seq)});

  const double r_prs = pooled(pseudo_random);
  report.checks.push_back({"prs_near_independent", std::abs(r_prs) < 0.05, r_prs, 0.0, 0.05,
                           "pooled lag-1 correlation"});
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> verify_suite_names() {
  return {"theorem", "oracles", "decomposition", "correlation"};
}

VerifyReport run_verify_suite(std::string_view suite, std::uint64_t seed) {
  VerifyReport report{std::string(suite), {}};
  if (suite == "theorem") {
    theorem_suite(report, seed);
  } else if (suite == "oracles") {
    oracles_suite(report, seed);
  } else if (suite == "decomposition") {
    decomposition_suite(report);
  } else if (suite == "correlation") {
    correlation_suite(report, seed);
  } else {
    throw ConfigError("verify: unknown suite '" + std::string(suite) + "'");
  }
  return report;
}

void print_report(const VerifyReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    nlohmann::json j = {{"suite", report.suite},   {"check", c.name},
                        {"pass", c.pass},          {"observed", c.observed},
                        {"expected", c.expected},  {"tolerance", c.tolerance},
                        {"note", c.note}};
    out << j.dump() << '\n';
  }
  nlohmann::json summary = {{"suite", report.suite}, {"passed", report.passed()}};
  out << summary.dump() << '\n';
}

}  // namespace mtd::harness
