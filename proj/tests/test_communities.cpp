#include <gtest/gtest.h>

#include "cn4/cliques.hpp"
#include "cn4/communities.hpp"
#include "cn4/components.hpp"
#include "cn4/error.hpp"
#include "cn4/percolation.hpp"
#include "oracles.hpp"

using namespace cn4;

namespace {

Adjacency from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> e) {
  return make_adjacency(n, e, true);
}

Adjacency complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return from_edges(n, e);
}

// `count` copies of K_size joined in a ring by one edge each.
Adjacency ring_of_cliques(std::size_t count, std::size_t size) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t c = 0; c < count; ++c) {
    auto base = static_cast<Vertex>(c * size);
    for (Vertex u = 0; u < size; ++u)
      for (Vertex v = u + 1; v < size; ++v) e.emplace_back(base + u, base + v);
    e.emplace_back(base, static_cast<Vertex>(((c + 1) % count) * size + 1));
  }
  return from_edges(count * size, e);
}

}  // namespace

TEST(Cliques, MatchBruteForceOnRandomGraphs) {
  Rng rng(21);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 1 + rng.below(16);
    auto g = oracle::random_graph(n, 0.2 + 0.6 * rng.uniform(), rng);
    auto expected = oracle::maximal_cliques(g);
    EXPECT_EQ(maximal_cliques(g).cliques, expected);
    EXPECT_EQ(maximal_cliques(g, 1, 4).cliques, expected);
  }
}

TEST(Cliques, K4IsOneClique) {
  auto s = maximal_cliques(complete(4));
  ASSERT_EQ(s.cliques.size(), 1u);
  EXPECT_EQ(s.cliques[0], (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(s.size_distribution(3), (Histogram{{4, 1}}));
}

TEST(Cliques, MinSizeFiltersSmallCliques) {
  auto g = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  auto all = maximal_cliques(g);
  EXPECT_EQ(all.cliques.size(), 3u);  // triangle, edge, isolated vertex 5
  EXPECT_EQ(all.size_distribution(), (Histogram{{1, 1}, {2, 1}, {3, 1}}));
  EXPECT_EQ(maximal_cliques(g, 3).cliques.size(), 1u);
}

TEST(Cliques, DegeneracyOrderPeelsSmallestFirst) {
  // star centered on 0 plus edge 1-2
  auto g = from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  EXPECT_EQ(degeneracy_order(g), (std::vector<Vertex>{3, 0, 1, 2}));
}

TEST(Percolation, MatchesCliqueGraphOracle) {
  Rng rng(22);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 3 + rng.below(10);
    auto g = oracle::random_graph(n, 0.3 + 0.5 * rng.uniform(), rng);
    for (std::size_t k : {3u, 4u}) {
      auto expected = oracle::percolation(g, k);
      auto cover = k_clique_percolation(g, k);
      EXPECT_EQ(cover.communities, expected);
      EXPECT_EQ(k_clique_percolation(maximal_cliques(g), n, k).communities, expected);
      std::vector<std::uint32_t> m(n, 0);
      for (const auto& c : expected)
        for (Vertex v : c) ++m[v];
      EXPECT_EQ(cover.membership, m);
    }
  }
}

TEST(Percolation, TrianglesSharingAnEdgeMerge) {
  auto g = from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
  auto c = k_clique_percolation(g, 3);
  ASSERT_EQ(c.communities.size(), 1u);
  EXPECT_EQ(c.communities[0], (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(c.size_distribution(), (Histogram{{4, 1}}));
  std::vector<char> mask{1, 1, 1, 1, 1};
  EXPECT_EQ(c.membership_distribution(mask), (Histogram{{0, 1}, {1, 4}}));
}

TEST(Percolation, TrianglesSharingAVertexStaySeparate) {
  auto g = from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  auto c = k_clique_percolation(g, 3);
  EXPECT_EQ(c.communities.size(), 2u);
  EXPECT_EQ(c.membership[2], 2u);
}

TEST(Percolation, SmallKIsRejected) {
  EXPECT_THROW(k_clique_percolation(complete(4), 2), ParameterError);
}

TEST(Modularity, TwoTrianglesJoinedByAnEdge) {
  auto g = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  Partition two = normalize({0, 0, 0, 1, 1, 1});
  double expected = oracle::modularity(g, two.community);
  EXPECT_NEAR(modularity(g, two), expected, 1e-12);
  EXPECT_NEAR(expected, 5.0 / 14.0, 1e-12);
  EXPECT_NEAR(modularity(g, normalize({7, 7, 7, 7, 7, 7})), 0.0, 1e-12);
}

TEST(Modularity, TwoDisjointTrianglesIsOneHalf) {
  auto g = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_NEAR(modularity(g, normalize({0, 0, 0, 1, 1, 1})), 0.5, 1e-12);
}

TEST(Modularity, MatchesDoubleSumOnRandomPartitions) {
  Rng rng(23);
  for (int round = 0; round < 30; ++round) {
    std::size_t n = 2 + rng.below(40);
    auto g = oracle::random_graph(n, 0.2, rng);
    if (g.arc_count() == 0) continue;
    std::vector<std::uint32_t> labels(n);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(5));
    auto p = normalize(labels);
    EXPECT_NEAR(modularity(g, p), oracle::modularity(g, p.community), 1e-12);
  }
}

TEST(Modularity, EdgelessGraphIsUndefined) {
  auto g = from_edges(3, {});
  EXPECT_THROW(modularity(g, normalize({0, 1, 2})), UndefinedError);
}

TEST(Normalize, NumbersByFirstAppearance) {
  auto p = normalize({9, 3, 9, 5, 3});
  EXPECT_EQ(p.community, (std::vector<std::uint32_t>{0, 1, 0, 2, 1}));
  EXPECT_EQ(p.count, 3u);
}

TEST(LabelPropagation, ReachesAFixpoint) {
  Rng rng(24);
  for (int round = 0; round < 30; ++round) {
    std::size_t n = 2 + rng.below(60);
    auto g = oracle::random_graph(n, 3.0 / static_cast<double>(n), rng);
    Rng r(round);
    auto p = label_propagation(g, r);
    EXPECT_TRUE(oracle::is_label_fixpoint(g, p.community));
    // communities never span two components
    auto comp = weak_components(g);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : g.neighbors(u))
        if (p.community[u] == p.community[v]) {
          EXPECT_EQ(comp.id[u], comp.id[v]);
        }
  }
}

TEST(Multilevel, FindsCliquesOnARing) {
  auto g = ring_of_cliques(8, 5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng r(seed);
    auto p = multilevel(g, r);
    EXPECT_EQ(p.count, 8u);
    for (std::size_t c = 0; c < 8; ++c)
      for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(p.community[c * 5 + i], p.community[c * 5]);
  }
}

TEST(Multilevel, NeverWorseThanSingletons) {
  Rng rng(25);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 5 + rng.below(60);
    auto g = oracle::random_graph(n, 4.0 / static_cast<double>(n), rng);
    if (g.arc_count() == 0) continue;
    Rng r(round);
    auto p = multilevel(g, r);
    std::vector<std::uint32_t> single(n);
    for (std::size_t i = 0; i < n; ++i) single[i] = static_cast<std::uint32_t>(i);
    EXPECT_GE(modularity(g, p) + 1e-12, modularity(g, normalize(single)));
  }
}

TEST(RunStats, SeededAndThreadInvariant) {
  auto g = ring_of_cliques(6, 4);
  for (auto algo : {CommunityAlgorithm::label_propagation, CommunityAlgorithm::multilevel}) {
    auto a = run_stats(algo, g, 12, 3, 1);
    auto b = run_stats(algo, g, 12, 3, 4);
    EXPECT_EQ(a.kappa_avg, b.kappa_avg);
    EXPECT_EQ(a.mu_avg, b.mu_avg);
    EXPECT_EQ(a.mu_min, b.mu_min);
    EXPECT_EQ(a.agreeing, b.agreeing);
    EXPECT_EQ(a.runs, 12u);
    EXPECT_LE(a.kappa_min, a.kappa_max);
  }
  EXPECT_THROW(run_stats(CommunityAlgorithm::multilevel, g, 0, 0), ParameterError);
  EXPECT_THROW(run_stats(CommunityAlgorithm::multilevel, from_edges(3, {}), 5, 0), UndefinedError);
}

TEST(RunStats, AlgorithmNames) {
  EXPECT_EQ(parse_community_algorithm("lp"), CommunityAlgorithm::label_propagation);
  EXPECT_EQ(to_string(CommunityAlgorithm::multilevel), "multilevel");
  EXPECT_THROW(parse_community_algorithm("louvain2"), ParameterError);
}
