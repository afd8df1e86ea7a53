#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "cn4/degree.hpp"
#include "cn4/error.hpp"
#include "cn4/graph.hpp"
#include "oracles.hpp"

using namespace cn4;

namespace {

struct Expected {
  std::size_t multi = 0, directed = 0, undirected = 0, isolated = 0;
};

Expected count_directly(const std::vector<oracle::Fact>& facts, std::size_t n,
                        const GraphSpec& spec) {
  std::set<std::pair<Index, Index>> dir, und;
  std::set<Index> touched;
  Expected e;
  for (const auto& f : facts) {
    if (spec.score == ScoreFilter::positive && f.score <= 0) continue;
    if (spec.loops == Loops::drop && f.a == f.c) continue;
    if (f.frequency < spec.frequency.lo || f.frequency > spec.frequency.hi) continue;
    if (spec.polarity == Polarity::negative && f.frequency > 0) continue;
    if (spec.polarity == Polarity::positive && f.frequency <= 0) continue;
    if (spec.relations &&
        std::find(spec.relations->begin(), spec.relations->end(), f.r) == spec.relations->end())
      continue;
    ++e.multi;
    dir.emplace(f.a, f.c);
    und.emplace(std::min(f.a, f.c), std::max(f.a, f.c));
    touched.insert(f.a);
    touched.insert(f.c);
  }
  e.directed = dir.size();
  e.undirected = und.size();
  e.isolated = n - touched.size();
  return e;
}

}  // namespace

TEST(Induce, CountsMatchDirectEnumeration) {
  Rng rng(3);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 5 + rng.below(30);
    auto facts = oracle::random_facts(n, 4, 10 + rng.below(120), rng);
    auto kb = oracle::make_kb(n, 4, facts);
    for (auto score : {ScoreFilter::all, ScoreFilter::positive})
      for (auto loops : {Loops::keep, Loops::drop})
        for (auto pol : {Polarity::negative, Polarity::positive, Polarity::both}) {
          GraphSpec spec;
          spec.score = score;
          spec.loops = loops;
          spec.polarity = pol;
          if (round % 3 == 0) spec.frequency = {-3, 6};
          if (round % 4 == 1) spec.relations = std::vector<Index>{0, 2};
          auto c = edge_counts(induce(kb, spec));
          auto e = count_directly(facts, n, spec);
          EXPECT_EQ(c.multi, e.multi);
          EXPECT_EQ(c.directed, e.directed);
          EXPECT_EQ(c.undirected, e.undirected);
          EXPECT_EQ(c.isolated, e.isolated);
        }
  }
}

TEST(Induce, PolaritiesPartitionTheEdges) {
  Rng rng(4);
  auto facts = oracle::random_facts(40, 5, 300, rng);
  auto kb = oracle::make_kb(40, 5, facts);
  GraphSpec neg, pos, both;
  neg.polarity = Polarity::negative;
  pos.polarity = Polarity::positive;
  EXPECT_EQ(induce(kb, neg).multi.size() + induce(kb, pos).multi.size(),
            induce(kb, both).multi.size());
}

TEST(Induce, CollapsedLabelsAreAscendingAssertionIndices) {
  auto kb = oracle::make_kb(3, 2, {{0, 0, 1, 1, 5}, {1, 1, 0, 1, 5}, {0, 1, 1, 1, 5}, {2, 0, 2, 1, 5}});
  GraphSpec spec;
  auto g = induce(kb, spec);
  ASSERT_EQ(g.directed.size(), 3u);
  EXPECT_EQ(g.directed.pairs[0], (std::pair<Vertex, Vertex>{0, 1}));
  auto l = g.directed.labels_of(0);
  EXPECT_EQ(std::vector<Index>(l.begin(), l.end()), (std::vector<Index>{0, 2}));
  ASSERT_EQ(g.undirected.size(), 2u);
  auto u = g.undirected.labels_of(0);
  EXPECT_EQ(std::vector<Index>(u.begin(), u.end()), (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(g.directed.loop_count(), 1u);
}

TEST(Induce, EdgeFileFormats) {
  auto kb = oracle::make_kb(3, 1, {{1, 0, 0, 1, 5}, {0, 0, 1, 1, 5}, {0, 0, 1, 1, 4}});
  auto g = induce(kb, GraphSpec{});
  std::ostringstream m, d;
  write_edges_multi(g, m);
  write_edges_collapsed(g.directed, d);
  EXPECT_EQ(m.str(), "0 1 1\n0 1 2\n1 0 0\n");
  EXPECT_EQ(d.str(), "0 1 2 1 2\n1 0 1 0\n");
}

TEST(Induce, FrequencyRangeValidation) {
  GraphSpec s;
  s.frequency = {3, 2};
  EXPECT_THROW(s.validate(), ParameterError);
  s.frequency = {-11, 2};
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(Induce, FrequencyRangeTableMatchesInduce) {
  Rng rng(5);
  auto facts = oracle::random_facts(30, 3, 200, rng);
  auto kb = oracle::make_kb(30, 3, facts);
  auto ranges = default_frequency_ranges();
  EXPECT_EQ(ranges.size(), 22u);
  auto rows = edges_by_frequency_range(kb, ranges);
  for (const auto& r : rows) {
    GraphSpec keep;
    keep.frequency = r.range;
    GraphSpec drop = keep;
    drop.loops = Loops::drop;
    auto k = edge_counts(induce(kb, keep));
    auto d = edge_counts(induce(kb, drop));
    EXPECT_EQ(r.multi_with_loops, k.multi);
    EXPECT_EQ(r.directed_with_loops, k.directed);
    EXPECT_EQ(r.undirected_with_loops, k.undirected);
    EXPECT_EQ(r.multi_without_loops, d.multi);
    EXPECT_EQ(r.directed_without_loops, d.directed);
    EXPECT_EQ(r.undirected_without_loops, d.undirected);
  }
}

TEST(Induce, RelationDecompositionSumsToTotal) {
  Rng rng(6);
  auto facts = oracle::random_facts(25, 4, 150, rng);
  auto kb = oracle::make_kb(25, 4, facts);
  std::size_t total = 0, loops = 0;
  for (const auto& r : decompose_by_relation(kb, ScoreFilter::positive)) {
    total += r.edges.total();
    loops += r.loops.total();
  }
  auto g = induce(kb, GraphSpec{});
  EXPECT_EQ(total, g.multi.size());
  std::size_t expected_loops = 0;
  for (const auto& e : g.multi) expected_loops += e.source == e.target;
  EXPECT_EQ(loops, expected_loops);
}

TEST(Degree, LoopsCountTwiceAndAveragesExcludeIsolated) {
  auto kb = oracle::make_kb(4, 1, {{0, 0, 0, 1, 5}, {0, 0, 1, 1, 5}, {1, 0, 0, 1, 5}});
  auto g = induce(kb, GraphSpec{});
  auto multi = degree_stats(g, GraphKind::multi);
  EXPECT_EQ(multi.total, (std::vector<std::uint64_t>{4, 2, 0, 0}));
  EXPECT_EQ(multi.out, (std::vector<std::uint64_t>{2, 1, 0, 0}));
  auto und = degree_stats(g, GraphKind::undirected);
  EXPECT_EQ(und.total, (std::vector<std::uint64_t>{3, 1, 0, 0}));
  EXPECT_DOUBLE_EQ(average_degree(g, GraphKind::multi, false), 1.5);
  EXPECT_DOUBLE_EQ(average_degree(g, GraphKind::multi, true), 3.0);
  EXPECT_EQ(degree_sample(g), (std::vector<std::int64_t>{4, 2}));
  auto top = top_k(multi.total, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].vertex, 0u);
  EXPECT_EQ(top[2].vertex, 2u);
  EXPECT_EQ(histogram(multi.total), (Histogram{{0, 2}, {2, 1}, {4, 1}}));
}

TEST(Degree, EmptyGraphAverageIsUndefined) {
  auto kb = oracle::make_kb(0, 1, {});
  EXPECT_THROW(average_degree(induce(kb, GraphSpec{}), GraphKind::multi, false), UndefinedError);
}
