#include <gtest/gtest.h>

#include <cmath>

#include "cn4/clustering.hpp"
#include "cn4/components.hpp"
#include "cn4/cores.hpp"
#include "cn4/error.hpp"
#include "cn4/paths.hpp"
#include "cn4/powerlaw.hpp"
#include "oracles.hpp"

using namespace cn4;

TEST(Components, TarjanKosarajuAndReachabilityAgree) {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 1 + rng.below(60);
    auto g = oracle::random_digraph(n, 2.0 / static_cast<double>(n), rng);
    auto expected = oracle::strong_components(g);
    EXPECT_EQ(strong_components(g).id, expected);
    EXPECT_EQ(strong_components_kosaraju(g).id, expected);
  }
}

TEST(Components, WeakComponentsOfTwoPaths) {
  std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {1, 2}, {4, 3}};
  auto g = make_adjacency(6, e, true);
  auto c = weak_components(g);
  EXPECT_EQ(c.id, (std::vector<std::uint32_t>{0, 0, 0, 1, 1, 2}));
  EXPECT_EQ(c.largest(), 3u);
  EXPECT_EQ(size_distribution(c), (Histogram{{1, 1}, {2, 1}, {3, 1}}));
}

TEST(Components, LongChainDoesNotOverflowTheStack) {
  const std::size_t n = 300000;
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(static_cast<Vertex>(n - 1), 0);
  auto g = make_adjacency(n, e, false);
  EXPECT_EQ(strong_components(g).count(), 1u);
  EXPECT_EQ(strong_components_kosaraju(g).count(), 1u);
}

TEST(Cores, PeelingMatchesRepeatedDeletion) {
  Rng rng(12);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = 1 + rng.below(80);
    auto g = oracle::random_graph(n, rng.uniform() * 0.3, rng);
    EXPECT_EQ(coreness(g), oracle::coreness(g));
  }
}

TEST(Cores, LoopsAddTwoInEveryView) {
  // triangle 0-1-2 plus a loop on 3 attached to 0
  std::vector<MultiEdge> e{{0, 1, 0}, {1, 2, 1}, {2, 0, 2}, {3, 3, 3}, {3, 0, 4}};
  auto g = from_multiedges(4, e);
  auto u = coreness(g, CoreView::undirected);
  EXPECT_EQ(u, (std::vector<std::uint32_t>{2, 2, 2, 2}));
  auto f = core_filtration(g);
  EXPECT_EQ(f.distribution, (Histogram{{2, 4}}));
  ASSERT_EQ(f.levels.size(), 3u);
  EXPECT_EQ(f.levels[2].vertices, 4u);
  EXPECT_EQ(f.levels[2].multi_edges, 5u);
}

TEST(Cores, MultigraphViewCountsParallelEdges) {
  std::vector<MultiEdge> e{{0, 1, 0}, {1, 0, 1}, {0, 1, 2}};
  auto g = from_multiedges(2, e);
  EXPECT_EQ(coreness(g, CoreView::multigraph), (std::vector<std::uint32_t>{3, 3}));
  EXPECT_EQ(coreness(g, CoreView::directed), (std::vector<std::uint32_t>{2, 2}));
  EXPECT_EQ(coreness(g, CoreView::undirected), (std::vector<std::uint32_t>{1, 1}));
}

TEST(Paths, HistogramsMatchFloydWarshall) {
  Rng rng(13);
  for (int round = 0; round < 30; ++round) {
    std::size_t n = 2 + rng.below(50);
    bool directed = round % 2 == 0;
    auto g = directed ? oracle::random_digraph(n, 1.5 / static_cast<double>(n), rng)
                      : oracle::random_graph(n, 1.5 / static_cast<double>(n), rng);
    auto [h, unreachable] = oracle::path_histogram(g, directed);
    for (unsigned threads : {1u, 3u}) {
      auto s = all_pairs_paths(g, directed, threads);
      EXPECT_EQ(s.histogram.lengths, h);
      EXPECT_EQ(s.histogram.unreachable, unreachable);
      std::uint64_t pairs = directed ? n * (n - 1) : n * (n - 1) / 2;
      EXPECT_EQ(s.histogram.total_pairs(), pairs);
      if (!h.empty()) {
        EXPECT_EQ(s.longest.length, static_cast<std::uint32_t>(h.rbegin()->first));
        ASSERT_EQ(s.longest.path.size(), s.longest.length + 1u);
        for (std::size_t i = 0; i + 1 < s.longest.path.size(); ++i)
          EXPECT_TRUE(g.has_arc(s.longest.path[i], s.longest.path[i + 1]));
      }
    }
  }
}

TEST(Paths, AverageOfEmptyHistogramIsUndefined) {
  PathLengthHistogram h;
  EXPECT_THROW(average_path_length(h), UndefinedError);
  h.lengths = {{1, 2}, {2, 2}};
  EXPECT_DOUBLE_EQ(average_path_length(h), 1.5);
}

TEST(Clustering, MatchesBruteForceTriples) {
  Rng rng(14);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 3 + rng.below(40);
    auto g = oracle::random_graph(n, 0.25, rng);
    auto a = oracle::matrix(g);
    std::uint64_t closed = 0, triples = 0;
    double local_sum = 0;
    std::size_t qualifying = 0;
    for (Vertex v = 0; v < n; ++v) {
      std::uint64_t t = 0;
      for (Vertex x : g.neighbors(v))
        for (Vertex y : g.neighbors(v))
          if (x < y && a[x][y]) ++t;
      EXPECT_EQ(triangles_per_vertex(g, 2)[v], t);
      std::uint64_t d = g.degree(v);
      closed += t;
      triples += d * (d - 1) / 2;
      if (d >= 2) {
        local_sum += static_cast<double>(t) / static_cast<double>(d * (d - 1) / 2);
        ++qualifying;
      }
    }
    if (triples == 0) {
      EXPECT_THROW(transitivity_global(g), UndefinedError);
      continue;
    }
    EXPECT_NEAR(transitivity_global(g), static_cast<double>(closed) / static_cast<double>(triples),
                1e-12);
    EXPECT_NEAR(clustering_avg(g, ClusteringMode::nan), local_sum / static_cast<double>(qualifying),
                1e-12);
    EXPECT_NEAR(clustering_avg(g, ClusteringMode::zero), local_sum / static_cast<double>(n), 1e-12);
  }
}

TEST(PowerLaw, HurwitzZetaMatchesDirectSum) {
  for (double s : {1.5, 2.0, 2.5, 3.7})
    for (double q : {0.5, 1.0, 2.5, 10.0}) {
      // direct sum plus the integral tail estimate
      double sum = 0;
      const int terms = 2000000;
      for (int k = 0; k < terms; ++k) sum += std::pow(k + q, -s);
      double tail = std::pow(terms + q, 1 - s) / (s - 1) - 0.5 * std::pow(terms + q, -s);
      EXPECT_NEAR(hurwitz_zeta(s, q), sum + tail, 1e-9 * (sum + tail)) << s << " " << q;
    }
  EXPECT_NEAR(hurwitz_zeta(2.0, 1.0), M_PI * M_PI / 6, 1e-12);
}

TEST(PowerLaw, MomentsOfSmallSample) {
  std::vector<std::int64_t> x{1, 2, 3, 4, 10};
  auto m = moments(x);
  EXPECT_DOUBLE_EQ(m.mean, 4.0);
  EXPECT_DOUBLE_EQ(m.variance, 12.5);
  double m3 = 0, m4 = 0;
  for (auto v : x) {
    double d = static_cast<double>(v) - 4.0;
    m3 += d * d * d / 5;
    m4 += d * d * d * d / 5;
  }
  EXPECT_NEAR(m.skewness, m3 / std::pow(std::sqrt(12.5), 3), 1e-12);
  EXPECT_NEAR(m.kurtosis, m4 / (12.5 * 12.5) - 3, 1e-12);
}

TEST(PowerLaw, RecoversExponentFromSyntheticSample) {
  Rng rng(15);
  std::vector<std::int64_t> x;
  for (int i = 0; i < 20000; ++i) x.push_back(sample_powerlaw(2.5, 3, rng));
  std::vector<std::int64_t> tail;
  for (auto v : x)
    if (v >= 3) tail.push_back(v);
  EXPECT_EQ(tail.size(), x.size());
  EXPECT_NEAR(fit_alpha(tail, 3), 2.5, 0.05);
  EXPECT_NEAR(approximate_alpha(tail, 3), 2.5, 0.1);
  FitOptions o;
  o.bootstrap = 0;
  auto f = powerlaw_fit(x, o);
  EXPECT_NEAR(f.alpha, 2.5, 0.1);
  EXPECT_EQ(f.n, x.size());
  EXPECT_GE(f.tail_n, 1000u);
}

TEST(PowerLaw, MleMaximizesLikelihood) {
  Rng rng(16);
  std::vector<std::int64_t> tail;
  for (int i = 0; i < 3000; ++i) tail.push_back(sample_powerlaw(2.2, 2, rng));
  double a = fit_alpha(tail, 2);
  double l = log_likelihood(tail, 2, a);
  EXPECT_GT(l, log_likelihood(tail, 2, a - 0.01));
  EXPECT_GT(l, log_likelihood(tail, 2, a + 0.01));
}

TEST(PowerLaw, BootstrapIsSeededAndThreadInvariant) {
  Rng rng(17);
  std::vector<std::int64_t> x;
  for (int i = 0; i < 600; ++i) x.push_back(sample_powerlaw(2.3, 1, rng));
  FitOptions a{20, 5, 1}, b{20, 5, 4};
  auto fa = powerlaw_fit(x, a);
  auto fb = powerlaw_fit(x, b);
  EXPECT_EQ(fa.p_value, fb.p_value);
  EXPECT_EQ(fa.bootstrap_n, fb.bootstrap_n);
  EXPECT_GE(fa.p_value, 0.0);
  EXPECT_LE(fa.p_value, 1.0);
}

TEST(PowerLaw, DegenerateSamplesThrow) {
  std::vector<std::int64_t> none;
  EXPECT_THROW(powerlaw_fit(none), FitError);
  std::vector<std::int64_t> constant(50, 4);
  EXPECT_THROW(powerlaw_fit(constant), FitError);
}

TEST(PowerLaw, LogZetaStaysFiniteWhereZetaUnderflows) {
  EXPECT_NEAR(log_hurwitz_zeta(2.5, 3.0), std::log(hurwitz_zeta(2.5, 3.0)), 1e-12);
  double l = log_hurwitz_zeta(110.0, 862.0);
  EXPECT_TRUE(std::isfinite(l));
  double scaled = 0;
  for (int k = 0; k < 100000; ++k) scaled += std::pow(1.0 + k / 862.0, -110.0);
  EXPECT_NEAR(l, -110.0 * std::log(862.0) + std::log(scaled), 1e-9);
  std::vector<std::int64_t> tail{862, 892};
  EXPECT_GT(ks_distance(tail, 862, 110.0), 0.1);
}
