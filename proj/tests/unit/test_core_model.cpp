#include <doctest.h>

#include <algorithm>
#include <vector>

#include "mtd/channel_set.hpp"
#include "mtd/errors.hpp"
#include "mtd/knowledge.hpp"
#include "mtd/rng.hpp"
#include "mtd/scenario.hpp"
#include "mtd/topology.hpp"

using namespace mtd;

namespace {

ChannelSet random_set(Rng& rng, int n) {
  std::vector<Channel> m;
  for (Channel c = 1; c <= n; ++c)
    if (rng.bernoulli(0.5)) m.push_back(c);
  if (m.empty()) m.push_back(static_cast<Channel>(rng.below(n)) + 1);
  return ChannelSet(std::move(m));
}

Scenario path3() {
  Scenario s;
  s.n_channels = 4;
  s.topology = Topology(3, {{0, 1}, {1, 2}});
  s.channel_sets = {ChannelSet{1, 2, 3}, ChannelSet{2, 3, 4}, ChannelSet{2, 4}};
  s.common_set = ChannelSet{2};
  return s;
}

}  // namespace

TEST_SUITE("core_model") {

TEST_CASE("channel set keeps members sorted and rejects bad labels") {
  ChannelSet c{5, 1, 3};
  CHECK(std::vector<Channel>(c.begin(), c.end()) == std::vector<Channel>{1, 3, 5});
  CHECK(c.min() == 1);
  CHECK(c.max() == 5);
  CHECK(c.contains(3));
  CHECK_FALSE(c.contains(2));
  CHECK(c.within(5));
  CHECK_FALSE(c.within(4));
  CHECK(c.to_string() == "{1,3,5}");
  CHECK_THROWS_AS(ChannelSet({1, 1}), DomainError);
  CHECK_THROWS_AS(ChannelSet({0, 2}), DomainError);
  CHECK(ChannelSet::full(4) == ChannelSet{1, 2, 3, 4});
}

TEST_CASE("set algebra") {
  ChannelSet a{1, 2, 3}, b{2, 3, 4};
  CHECK(set_intersection(a, b) == ChannelSet{2, 3});
  CHECK(set_union(a, b) == ChannelSet{1, 2, 3, 4});
  CHECK(set_difference(a, b) == ChannelSet{1});
  CHECK(intersection_size(a, b) == 2);
  CHECK(ChannelSet{2}.is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
}

TEST_CASE("jaccard examples") {
  CHECK(jaccard({1, 2, 3}, {1, 2, 3}) == Rational{1, 1});
  CHECK(jaccard({1, 2}, {3, 4}) == Rational{0, 1});
  auto j = jaccard({1, 2, 3}, {2, 3, 4});
  CHECK(j == Rational{1, 2});
  CHECK(j.value() == doctest::Approx(0.5));
  CHECK(j.reciprocal() == Rational{2, 1});
  CHECK_THROWS_AS(jaccard(ChannelSet{}, {1}), DomainError);
  CHECK_THROWS_AS(jaccard({1}, ChannelSet{}), DomainError);
  CHECK_THROWS_AS((Rational{0, 1}.reciprocal()), DomainError);
}

TEST_CASE("jaccard properties on random sets") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto a = random_set(rng, 12), b = random_set(rng, 12);
    CHECK(jaccard(a, b) == jaccard(b, a));
    CHECK(jaccard(a, a) == Rational{1, 1});
    CHECK((jaccard(a, b).num == 0) == (intersection_size(a, b) == 0));
    auto j = jaccard(a, b);
    CHECK(j.num * static_cast<std::int64_t>(set_union(a, b).size()) ==
          j.den * static_cast<std::int64_t>(intersection_size(a, b)));
  }
}

TEST_CASE("intersect_all examples and subset property") {
  std::vector<ChannelSet> one{{1, 2, 3}};
  CHECK(intersect_all(one) == ChannelSet{1, 2, 3});
  std::vector<ChannelSet> three{{1, 2}, {2, 3}, {2, 4}};
  CHECK(intersect_all(three) == ChannelSet{2});
  std::vector<ChannelSet> disjoint{{1}, {2}};
  CHECK(intersect_all(disjoint).empty());
  CHECK_THROWS_AS(intersect_all(std::span<const ChannelSet>{}), DomainError);

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<ChannelSet> sets;
    for (int k = 0; k < 4; ++k) sets.push_back(random_set(rng, 10));
    auto all = intersect_all(sets);
    for (const auto& s : sets) CHECK(all.is_subset_of(s));
  }
}

TEST_CASE("topology normalizes edges and validates endpoints") {
  Topology t(4, {{2, 1}, {1, 2}, {0, 1}});
  CHECK(t.edge_count() == 2);
  CHECK(t.has_edge(2, 1));
  CHECK(t.has_edge(1, 0));
  CHECK_FALSE(t.has_edge(0, 2));
  CHECK_FALSE(t.is_connected());
  CHECK(std::vector<UserId>(t.neighbors(1).begin(), t.neighbors(1).end()) ==
        std::vector<UserId>{0, 2});
  CHECK_THROWS_AS(Topology(3, {{1, 1}}), DomainError);
  CHECK_THROWS_AS(Topology(3, {{0, 3}}), DomainError);
  CHECK(Topology(3, {{0, 1}, {1, 2}}).is_connected());
  CHECK(Topology(1, {}).is_connected());
}

TEST_CASE("connected components examples") {
  Topology path(3, {{0, 1}, {1, 2}});
  std::vector<UserId> ends{0, 2};
  CHECK(connected_components(path, ends) == std::vector<std::vector<UserId>>{{0}, {2}});
  std::vector<UserId> all{2, 0, 1};
  CHECK(connected_components(path, all) == std::vector<std::vector<UserId>>{{0, 1, 2}});
  CHECK(connected_components(path, std::span<const UserId>{}).empty());

  Topology two(5, {{3, 4}, {0, 2}});
  std::vector<UserId> sub{4, 3, 2, 0, 1};
  CHECK(connected_components(two, sub) ==
        std::vector<std::vector<UserId>>{{0, 2}, {1}, {3, 4}});
}

TEST_CASE("merge of two adjacent users knowing only themselves") {
  KnowledgeState a(3, 0, {1, 2}), b(3, 1, {2, 3});
  std::vector<KnowledgeState> states{a, b};
  std::vector<Edge> e{Edge::of(1, 0)};
  auto m = merge_knowledge(states, e);
  CHECK(m.owner() == 0);
  CHECK(m.known_users() == std::vector<UserId>{0, 1});
  CHECK(*m.channel_set_of(1) == ChannelSet{2, 3});
  CHECK(m.channel_set_of(2) == nullptr);
  CHECK(m.known_edges() == std::vector<Edge>{{0, 1}});
  CHECK(m.common_channels() == ChannelSet{2});
}

TEST_CASE("merge propagates knowledge transitively") {
  KnowledgeState u1(3, 0, {1, 2}), u2(3, 1, {1, 2, 3}), u3(3, 2, {2, 3});
  std::vector<KnowledgeState> s23{u2, u3};
  std::vector<Edge> e23{{1, 2}};
  auto k2 = merge_knowledge(s23, e23);
  std::vector<KnowledgeState> s12{u1, k2};
  std::vector<Edge> e12{{0, 1}};
  auto k1 = merge_knowledge(s12, e12);
  CHECK(k1.known_user_count() == 3);
  CHECK(k1.knows_edge({1, 2}));
  CHECK(k1.knows_edge({0, 1}));
  CHECK(k1.common_channels() == ChannelSet{2});
}

TEST_CASE("merge error paths") {
  KnowledgeState a(3, 0, {1}), a_other(3, 0, {2}), b(3, 1, {1}), small(2, 1, {1});
  std::vector<KnowledgeState> conflict{a, a_other};
  CHECK_THROWS_AS(merge_knowledge(conflict, {}), IntegrityError);
  std::vector<KnowledgeState> ab{a, b};
  std::vector<Edge> unknown{{0, 2}};
  CHECK_THROWS_AS(merge_knowledge(ab, unknown), IntegrityError);
  std::vector<KnowledgeState> sizes{a, small};
  CHECK_THROWS_AS(merge_knowledge(sizes, {}), DomainError);
  CHECK_THROWS_AS(merge_knowledge(std::span<const KnowledgeState>{}, {}), DomainError);
  CHECK_THROWS_AS(a.as_seen_by(2), IntegrityError);
}

TEST_CASE("merge is idempotent, commutative, associative and monotone") {
  const int K = 6;
  Rng rng(99);
  std::vector<ChannelSet> sets;
  for (int u = 0; u < K; ++u) sets.push_back(random_set(rng, 8));
  std::vector<Edge> all_edges;
  for (int u = 0; u < K; ++u)
    for (int v = u + 1; v < K; ++v) all_edges.push_back({u, v});

  // Random states built by merging random groups of initial states.
  auto random_state = [&](UserId owner) {
    std::vector<KnowledgeState> parts{KnowledgeState(K, owner, sets[owner])};
    for (int u = 0; u < K; ++u)
      if (u != owner && rng.bernoulli(0.4)) parts.emplace_back(K, u, sets[u]);
    std::vector<UserId> ids;
    for (const auto& p : parts) ids.push_back(p.owner());
    std::vector<Edge> es;
    for (auto e : all_edges)
      if (std::count(ids.begin(), ids.end(), e.u) && std::count(ids.begin(), ids.end(), e.v) &&
          rng.bernoulli(0.5))
        es.push_back(e);
    return merge_knowledge(parts, es);
  };

  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_state(static_cast<UserId>(rng.below(K)));
    auto b = random_state(static_cast<UserId>(rng.below(K)));
    auto c = random_state(static_cast<UserId>(rng.below(K)));

    std::vector<KnowledgeState> aa{a, a};
    CHECK(merge_knowledge(aa, {}).same_knowledge(a));
    std::vector<KnowledgeState> a1{a};
    CHECK(merge_knowledge(a1, {}).same_knowledge(a));

    std::vector<KnowledgeState> ab{a, b}, ba{b, a};
    auto mab = merge_knowledge(ab, {});
    CHECK(mab.same_knowledge(merge_knowledge(ba, {})));

    std::vector<KnowledgeState> ab_c{mab, c};
    std::vector<KnowledgeState> bc{b, c};
    std::vector<KnowledgeState> a_bc{a, merge_knowledge(bc, {})};
    std::vector<KnowledgeState> abc{a, b, c};
    auto left = merge_knowledge(ab_c, {});
    CHECK(left.same_knowledge(merge_knowledge(a_bc, {})));
    CHECK(left.same_knowledge(merge_knowledge(abc, {})));

    for (UserId u : a.known_users()) CHECK(mab.knows(u));
    for (Edge e : a.known_edges()) CHECK(mab.knows_edge(e));
    CHECK(mab.known_user_count() >= std::max(a.known_user_count(), b.known_user_count()));

    // The maintained intersection agrees with a fresh one.
    std::vector<ChannelSet> known;
    for (UserId u : left.known_users()) known.push_back(*left.channel_set_of(u));
    CHECK(left.common_channels() == intersect_all(known));
  }
}

TEST_CASE("as_seen_by keeps the knowledge and changes the owner") {
  KnowledgeState a(2, 0, {1}), b(2, 1, {1, 2});
  std::vector<KnowledgeState> ab{a, b};
  std::vector<Edge> e{{0, 1}};
  auto m = merge_knowledge(ab, e);
  auto seen = m.as_seen_by(1);
  CHECK(seen.owner() == 1);
  CHECK(seen.same_body(m));
  CHECK(seen.same_knowledge(m));
}

TEST_CASE("is_complete") {
  auto s = path3();
  KnowledgeState u0(3, 0, s.channel_sets[0]), u1(3, 1, s.channel_sets[1]),
      u2(3, 2, s.channel_sets[2]);
  CHECK_FALSE(is_complete(u0, s));

  std::vector<KnowledgeState> all{u0, u1, u2};
  std::vector<Edge> both{{0, 1}, {1, 2}};
  auto full = merge_knowledge(all, both);
  CHECK(is_complete(full, s));

  std::vector<Edge> one{{0, 1}};
  auto missing_edge = merge_knowledge(all, one);
  CHECK_FALSE(is_complete(missing_edge, s));

  // Monotone under further merges.
  std::vector<KnowledgeState> more{full, missing_edge};
  CHECK(is_complete(merge_knowledge(more, {}), s));

  // Right users, wrong channel set.
  KnowledgeState wrong(3, 2, {4});
  std::vector<KnowledgeState> bad{u0, u1, wrong};
  CHECK_FALSE(is_complete(merge_knowledge(bad, both), s));

  Scenario single;
  single.n_channels = 3;
  single.topology = Topology(1, {});
  single.channel_sets = {ChannelSet{2}};
  single.common_set = ChannelSet{2};
  CHECK(is_complete(KnowledgeState(1, 0, {2}), single));
}

TEST_CASE("validate_scenario") {
  auto s = path3();
  CHECK(validate_scenario(s).empty());

  auto disconnected = s;
  disconnected.topology = Topology(3, {{0, 1}});
  auto v = validate_scenario(disconnected);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::Connectivity);
  CHECK(std::string(to_string(v[0].kind)) == "ConnectivityViolation");

  auto no_common = s;
  no_common.channel_sets[2] = ChannelSet{4};
  no_common.common_set = ChannelSet{};
  auto w = validate_scenario(no_common);
  REQUIRE_FALSE(w.empty());
  CHECK(w[0].kind == Violation::Kind::CommonChannel);

  auto bad_common = s;
  bad_common.common_set = ChannelSet{3};
  CHECK_FALSE(validate_scenario(bad_common).empty());

  auto out_of_range = s;
  out_of_range.channel_sets[0] = ChannelSet{2, 9};
  auto x = validate_scenario(out_of_range);
  REQUIRE_FALSE(x.empty());
  CHECK(x[0].kind == Violation::Kind::Structure);

  auto wrong_count = s;
  wrong_count.channel_sets.pop_back();
  CHECK_FALSE(validate_scenario(wrong_count).empty());
}

}  // TEST_SUITE
