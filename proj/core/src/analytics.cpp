#include "mtd/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "mtd/errors.hpp"

namespace mtd::analytics {

namespace {

__extension__ using Int128 = __int128;

// Partial Fisher-Yates over {1..n}; the first k entries are a uniformly
// random ordered sample.
std::vector<Channel> ordered_sample(int n, int k, Rng& rng) {
  if (k < 0 || k > n) throw DomainError("sample size outside [0, n]");
  std::vector<Channel> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace

MarkovParams::MarkovParams(double p, double p00) : p_(p), p00_(p00) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("MarkovParams: p must lie in (0, 1)");
  if (!(p00 >= 0.0 && p00 <= 1.0)) throw DomainError("MarkovParams: p00 must lie in [0, 1]");
  // Stationarity: p (1 - p11) = (1 - p)(1 - p00).
  double p11 = 1.0 - (1.0 - p) * (1.0 - p00) / p;
  if (p11 < 0.0 && p11 > -1e-12) p11 = 0.0;
  if (p11 < 0.0 || p11 > 1.0) {
    throw DomainError("MarkovParams: no stationary chain with these p and p00");
  }
  p11_ = p11;
}

double MarkovParams::min_p00(double p) noexcept {
  return std::max(0.0, 1.0 - p / (1.0 - p));
}

double markov_tail(const MarkovParams& params, Slot t) {
  if (t < 0) throw DomainError("markov_tail: t must be >= 0");
  if (t == 0) return 1.0;
  return (1.0 - params.p()) * std::pow(params.p00(), static_cast<double>(t - 1));
}

double markov_expected_T(const MarkovParams& params) {
  if (params.p00() >= 1.0) throw DivergenceError("markov_expected_T: p00 = 1 never succeeds");
  return 1.0 + (1.0 - params.p()) / (1.0 - params.p00());
}

double markov_correlation(const MarkovParams& params) {
  return (params.p00() - (1.0 - params.p())) / params.p();
}

void Lag1Accumulator::add(std::span<const bool> x) {
  for (std::size_t t = 0; t + 1 < x.size(); ++t) {
    const bool a = x[t];
    const bool b = x[t + 1];
    ++n_;
    sum_a_ += a;
    sum_b_ += b;
    sum_ab_ += a && b;
  }
}

void Lag1Accumulator::add(const std::vector<bool>& x) {
  for (std::size_t t = 0; t + 1 < x.size(); ++t) {
    const bool a = x[t];
    const bool b = x[t + 1];
    ++n_;
    sum_a_ += a;
    sum_b_ += b;
    sum_ab_ += a && b;
  }
}

void Lag1Accumulator::merge(const Lag1Accumulator& other) {
  n_ += other.n_;
  sum_a_ += other.sum_a_;
  sum_b_ += other.sum_b_;
  sum_ab_ += other.sum_ab_;
}

std::optional<double> Lag1Accumulator::correlation() const {
  if (n_ == 0) return std::nullopt;
  // With pooled mean m = S/(2n), S = sum_a + sum_b, and binary data
  // (x^2 = x), every centered sum times 4n is an integer.
  const auto n = static_cast<Int128>(n_);
  const auto sa = static_cast<Int128>(sum_a_);
  const auto sb = static_cast<Int128>(sum_b_);
  const auto s = sa + sb;
  const Int128 cov = 4 * n * static_cast<Int128>(sum_ab_) - s * s;
  const Int128 var_a = 4 * n * sa - 4 * sa * s + s * s;
  const Int128 var_b = 4 * n * sb - 4 * sb * s + s * s;
  if (var_a <= 0 || var_b <= 0) return std::nullopt;
  const long double denom =
      std::sqrt(static_cast<long double>(var_a) * static_cast<long double>(var_b));
  return static_cast<double>(static_cast<long double>(cov) / denom);
}

std::optional<double> empirical_lag1_correlation(const std::vector<bool>& x) {
  if (x.size() < 3) throw DomainError("empirical_lag1_correlation: need at least 3 samples");
  Lag1Accumulator acc;
  acc.add(x);
  return acc.correlation();
}

std::size_t RingDecomposition::count(SegmentType type) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      segments.begin(), segments.end(), [type](const RingSegment& s) { return s.type == type; }));
}

const RingSegment& RingDecomposition::segment_of(Channel c) const {
  if (segments.empty() || c < 1 || c > n) throw DomainError("segment_of: channel outside ring");
  const auto it = std::lower_bound(segments.begin(), segments.end(), c,
                                   [](const RingSegment& s, Channel x) { return s.end < x; });
  return it != segments.end() ? *it : segments.front();
}

RingDecomposition ring_decompose(const ChannelSet& c1, const ChannelSet& c2, int n) {
  const ChannelSet colored = set_union(c1, c2);
  if (colored.empty()) throw DomainError("ring_decompose: no colored node");
  if (!colored.within(n)) throw DomainError("ring_decompose: channel outside 1..N");

  RingDecomposition out;
  out.n = n;
  const auto nodes = colored.members();
  out.segments.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Channel end = nodes[i];
    const Channel prev = nodes[(i + nodes.size() - 1) % nodes.size()];
    int length = ((end - prev) % n + n) % n;
    if (length == 0) length = n;  // a single colored node owns the whole ring
    const bool in1 = c1.contains(end);
    const bool in2 = c2.contains(end);
    const SegmentType type = in1 && in2 ? SegmentType::Rendezvous
                             : in1      ? SegmentType::Type1
                                        : SegmentType::Type2;
    out.segments.push_back({end, type, length});
  }
  return out;
}

double ettr_oracle_random(int n1, int n2, int n12) {
  if (n1 < 1 || n2 < 1) throw DomainError("ettr_oracle_random: set sizes must be >= 1");
  if (n12 == 0) throw DivergenceError("ettr_oracle_random: no common channel");
  if (n12 < 0 || n12 > std::min(n1, n2)) {
    throw DomainError("ettr_oracle_random: n12 must lie in [1, min(n1, n2)]");
  }
  return static_cast<double>(n1) * n2 / n12;
}

Rational ettr_oracle_pi(const ChannelSet& c1, const ChannelSet& c2) {
  if (c1.empty() || c2.empty()) throw DomainError("ettr_oracle_pi: empty channel set");
  const auto common = static_cast<std::int64_t>(intersection_size(c1, c2));
  if (common == 0) throw DivergenceError("ettr_oracle_pi: no common channel");
  const auto total = static_cast<std::int64_t>(c1.size() + c2.size()) - common;
  return Rational::make(total, common);
}

ChannelSet random_subset(int n, int k, Rng& rng) {
  return ChannelSet(ordered_sample(n, k, rng));
}

std::pair<ChannelSet, ChannelSet> random_set_pair(int n, int n1, int n2, int n12, Rng& rng) {
  if (n12 < 0 || n12 > std::min(n1, n2) || n1 + n2 - n12 > n) {
    throw DomainError("random_set_pair: inconsistent sizes");
  }
  const std::vector<Channel> picked = ordered_sample(n, n1 + n2 - n12, rng);
  std::vector<Channel> a(picked.begin(), picked.begin() + n1);
  std::vector<Channel> b(picked.begin(), picked.begin() + n12);
  b.insert(b.end(), picked.begin() + n1, picked.end());
  return {ChannelSet(std::move(a)), ChannelSet(std::move(b))};
}

}  // namespace mtd::analytics
