#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mtd/channel_set.hpp"
#include "mtd/hop_algorithms.hpp"

namespace mtd::analytics {

/// Stationary two-state Markov chain of Bernoulli trials: P(X=1) = p and
/// P(X_{t+1}=0 | X_t=0) = p00. p11 follows from stationarity.
class MarkovParams {
 public:
  /// Throws DomainError unless 0 < p < 1, 0 <= p00 <= 1, and the implied
  /// p11 lies in [0, 1].
  MarkovParams(double p, double p00);

  double p() const noexcept { return p_; }
  double p00() const noexcept { return p00_; }
  double p11() const noexcept { return p11_; }

  /// Smallest p00 admitting a stationary chain: max(0, 1 - p/(1-p)).
  static double min_p00(double p) noexcept;

 private:
  double p_;
  double p00_;
  double p11_;
};

/// P(T > t) = (1-p) p00^(t-1) for t >= 1, and 1 at t = 0.
double markov_tail(const MarkovParams& params, Slot t);

/// E[T] = 1 + (1-p)/(1-p00). Throws DivergenceError when p00 == 1.
double markov_expected_T(const MarkovParams& params);

/// Lag-1 correlation omega = (p00 - (1-p)) / p.
double markov_correlation(const MarkovParams& params);

/// Pearson correlation over consecutive pairs (x_t, x_{t+1}) with a single
/// mean pooled over both coordinates. Sequences can be added one at a time;
/// pairs never straddle two sequences.
class Lag1Accumulator {
 public:
  void add(std::span<const bool> x);
  void add(const std::vector<bool>& x);
  void merge(const Lag1Accumulator& other);

  std::uint64_t pairs() const noexcept { return n_; }

  /// nullopt when either coordinate has zero variance.
  std::optional<double> correlation() const;

 private:
  std::uint64_t n_ = 0;
  std::uint64_t sum_a_ = 0;  // sum of x_t (first coordinate)
  std::uint64_t sum_b_ = 0;  // sum of x_{t+1}
  std::uint64_t sum_ab_ = 0;
};

/// Throws DomainError for sequences shorter than 3.
std::optional<double> empirical_lag1_correlation(const std::vector<bool>& x);

enum class SegmentType { Rendezvous, Type1, Type2 };

struct RingSegment {
  Channel end = 0;      // forward end node
  SegmentType type = SegmentType::Rendezvous;
  int length = 0;       // nodes in (previous end, end]
};

/// Cut of the n-ring {1..n} by the channels in c1 ∪ c2.
struct RingDecomposition {
  int n = 0;
  std::vector<RingSegment> segments;  // ascending by end

  std::size_t count(SegmentType type) const noexcept;
  /// Segment whose node range contains channel c.
  const RingSegment& segment_of(Channel c) const;
};

/// Throws DomainError if c1 ∪ c2 is empty or not within [1, n].
RingDecomposition ring_decompose(const ChannelSet& c1, const ChannelSet& c2, int n);

/// n1 n2 / n12. Throws DivergenceError when n12 == 0, DomainError when
/// n12 exceeds min(n1, n2).
double ettr_oracle_random(int n1, int n2, int n12);

/// |c1 ∪ c2| / |c1 ∩ c2|. Throws DivergenceError on disjoint sets.
Rational ettr_oracle_pi(const ChannelSet& c1, const ChannelSet& c2);

/// Random channel-set pair with |c1| = n1, |c2| = n2, |c1 ∩ c2| = n12,
/// uniform over such pairs in {1..n}.
std::pair<ChannelSet, ChannelSet> random_set_pair(int n, int n1, int n2, int n12, Rng& rng);

/// Uniform k-subset of {1..n}.
ChannelSet random_subset(int n, int k, Rng& rng);

}  // namespace mtd::analytics
