#include <gtest/gtest.h>

#include "cn4/error.hpp"
#include "cn4/rules.hpp"
#include "oracles.hpp"

using namespace cn4;

TEST(Rules, StatsMatchCubicOracle) {
  Rng rng(31);
  for (int round = 0; round < 30; ++round) {
    std::size_t n = 3 + rng.below(12);
    auto rels = static_cast<Index>(1 + rng.below(4));
    auto facts = oracle::random_facts(n, rels, 5 + rng.below(60), rng);
    auto kb = oracle::make_kb(n, rels, facts);
    FactIndex index(kb);
    for (Index x = 0; x < rels; ++x)
      for (Index y = 0; y < rels; ++y)
        for (Index z = 0; z < rels; ++z) {
          auto expected = oracle::rule(facts, n, x, y, z);
          auto s = rule_stats(index, {x, y, z});
          EXPECT_EQ(s.support, expected.support);
          EXPECT_EQ(s.successes, expected.successes);
        }
  }
}

TEST(Rules, ChainRuleWitnesses) {
  // a -R0-> b -R1-> c, a -R2-> c; a second chain without a conclusion
  auto kb = oracle::make_kb(6, 3,
                            {{0, 0, 1, 1, 5}, {1, 1, 2, 1, 5}, {0, 2, 2, 1, 5},
                             {3, 0, 4, 1, 5}, {4, 1, 5, 1, 5}, {3, 0, 4, 2, 5}});
  std::vector<std::tuple<Index, Index, Index, bool>> seen;
  auto s = rule_stats(kb, {0, 1, 2},
                      [&](Index a, Index b, Index c, bool ok) { seen.emplace_back(a, b, c, ok); });
  EXPECT_EQ(s.support, 2u);
  EXPECT_EQ(s.successes, 1u);
  EXPECT_DOUBLE_EQ(s.ratio(), 0.5);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[0], std::make_tuple(Index{0}, Index{1}, Index{2}, true));
  EXPECT_EQ(seen[1], std::make_tuple(Index{3}, Index{4}, Index{5}, false));
}

TEST(Rules, EmptySupportRatioIsUndefined) {
  RuleStats s;
  EXPECT_THROW(s.ratio(), UndefinedError);
}

TEST(Rules, NonPositiveScoresAreIgnored) {
  auto kb = oracle::make_kb(3, 2, {{0, 0, 1, 0, 5}, {1, 1, 2, 1, 5}, {0, 0, 2, 1, 5}});
  EXPECT_EQ(rule_stats(kb, {0, 1, 0}).support, 0u);
}

TEST(Rules, ConclusionPolarityFlag) {
  auto kb = oracle::make_kb(3, 3, {{0, 0, 1, 1, 5}, {1, 1, 2, 1, 5}, {0, 2, 2, 1, -5}});
  EXPECT_EQ(rule_stats(FactIndex(kb, false), {0, 1, 2}).successes, 1u);
  EXPECT_EQ(rule_stats(FactIndex(kb, true), {0, 1, 2}).successes, 0u);
}

TEST(Rules, EligibleRelationsUseTheThreshold) {
  std::vector<oracle::Fact> facts;
  for (Index i = 0; i < 350; ++i) facts.push_back({i % 20, 0, (i / 20) % 20, 1, 5});
  for (Index i = 0; i < 299; ++i) facts.push_back({i % 20, 1, (i / 20) % 20, 1, 5});
  for (Index i = 0; i < 10; ++i) facts.push_back({i, 1, i, -1, 5});
  auto kb = oracle::make_kb(20, 2, facts);
  EXPECT_EQ(eligible_relations(kb), (std::vector<Index>{0}));
  EXPECT_EQ(eligible_relations(kb, 299), (std::vector<Index>{0, 1}));
}

TEST(Rules, MinedRulesMatchOracleAndThresholds) {
  Rng rng(32);
  std::size_t n = 10;
  Index rels = 3;
  auto facts = oracle::random_facts(n, rels, 120, rng);
  auto kb = oracle::make_kb(n, rels, facts);
  MineOptions o;
  o.min_support = 5;
  o.min_ratio = 0.1;
  o.min_relation_count = 1;
  auto mined = mine_frequent(kb, o, 1);
  EXPECT_EQ(mine_frequent(kb, o, 4), mined);
  std::size_t expected_count = 0;
  for (Index x = 0; x < rels; ++x)
    for (Index y = 0; y < rels; ++y)
      for (Index z = 0; z < rels; ++z) {
        auto e = oracle::rule(facts, n, x, y, z);
        if (e.support >= 5 && e.support > 0 &&
            static_cast<double>(e.successes) / static_cast<double>(e.support) >= 0.1)
          ++expected_count;
      }
  EXPECT_EQ(mined.size(), expected_count);
  EXPECT_TRUE(std::is_sorted(mined.begin(), mined.end(),
                             [](const RuleStats& a, const RuleStats& b) { return a.rule < b.rule; }));
}

TEST(Rules, RaisingThresholdsOnlyRemovesRules) {
  Rng rng(33);
  auto facts = oracle::random_facts(12, 3, 150, rng);
  auto kb = oracle::make_kb(12, 3, facts);
  MineOptions lo;
  lo.min_support = 3;
  lo.min_ratio = 0.05;
  lo.min_relation_count = 1;
  MineOptions hi = lo;
  hi.min_support = 8;
  hi.min_ratio = 0.2;
  auto a = mine_frequent(kb, lo);
  auto b = mine_frequent(kb, hi);
  for (const auto& r : b) EXPECT_NE(std::find(a.begin(), a.end(), r), a.end());
}

TEST(Rules, SupportDoesNotDependOnConclusion) {
  Rng rng(34);
  auto facts = oracle::random_facts(10, 4, 100, rng);
  auto kb = oracle::make_kb(10, 4, facts);
  FactIndex index(kb);
  for (Index x = 0; x < 4; ++x)
    for (Index y = 0; y < 4; ++y) {
      auto base = rule_stats(index, {x, y, 0}).support;
      for (Index z = 1; z < 4; ++z) EXPECT_EQ(rule_stats(index, {x, y, z}).support, base);
    }
}

TEST(Rules, ConceptRelabelingPreservesCounts) {
  Rng rng(35);
  std::size_t n = 12;
  auto facts = oracle::random_facts(n, 3, 100, rng);
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  rng.shuffle(perm);
  auto relabeled = facts;
  for (auto& f : relabeled) {
    f.a = perm[f.a];
    f.c = perm[f.c];
  }
  FactIndex a(oracle::make_kb(n, 3, facts)), b(oracle::make_kb(n, 3, relabeled));
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y)
      for (Index z = 0; z < 3; ++z) EXPECT_EQ(rule_stats(a, {x, y, z}).successes,
                                              rule_stats(b, {x, y, z}).successes);
}

TEST(Rules, RelationByName) {
  auto kb = oracle::make_kb(1, 3, {});
  EXPECT_EQ(relation_by_name(kb, "R2"), Index{2});
  EXPECT_THROW(relation_by_name(kb, "Nope"), ParameterError);
}
