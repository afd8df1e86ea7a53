#include <benchmark/benchmark.h>

#include "cn4/cliques.hpp"
#include "cn4/communities.hpp"
#include "cn4/components.hpp"
#include "cn4/cores.hpp"
#include "cn4/paths.hpp"
#include "cn4/percolation.hpp"
#include "cn4/powerlaw.hpp"
#include "cn4/rng.hpp"

namespace {

using cn4::Adjacency;
using cn4::Rng;
using cn4::Vertex;

// Sparse graph with a heavy-tailed degree sequence: each new vertex links to
// endpoints of earlier edges (preferential attachment).
Adjacency preferential(std::size_t n, std::size_t per_vertex, std::uint64_t seed, bool symmetric) {
  Rng rng(seed);
  std::vector<std::pair<Vertex, Vertex>> e;
  std::vector<Vertex> ends{0};
  for (Vertex v = 1; v < n; ++v) {
    for (std::size_t k = 0; k < per_vertex; ++k) {
      Vertex u = ends[rng.below(ends.size())];
      if (u == v) continue;
      if (rng.below(2)) e.emplace_back(v, u); else e.emplace_back(u, v);
      ends.push_back(u);
    }
    ends.push_back(v);
  }
  return cn4::make_adjacency(n, e, symmetric);
}

void BM_MaximalCliques(benchmark::State& st) {
  auto g = preferential(static_cast<std::size_t>(st.range(0)), 4, 1, true);
  for (auto _ : st) benchmark::DoNotOptimize(cn4::maximal_cliques(g, 3).cliques.size());
}
BENCHMARK(BM_MaximalCliques)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Percolation(benchmark::State& st) {
  auto g = preferential(static_cast<std::size_t>(st.range(0)), 4, 2, true);
  for (auto _ : st) benchmark::DoNotOptimize(cn4::k_clique_percolation(g, 3).communities.size());
}
BENCHMARK(BM_Percolation)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Coreness(benchmark::State& st) {
  auto g = preferential(static_cast<std::size_t>(st.range(0)), 3, 3, true);
  for (auto _ : st) benchmark::DoNotOptimize(cn4::coreness(g).size());
}
BENCHMARK(BM_Coreness)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_StrongComponents(benchmark::State& st) {
  auto g = preferential(static_cast<std::size_t>(st.range(0)), 2, 4, false);
  for (auto _ : st) benchmark::DoNotOptimize(cn4::strong_components(g).count());
}
BENCHMARK(BM_StrongComponents)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_AllPairsPaths(benchmark::State& st) {
  auto g = preferential(static_cast<std::size_t>(st.range(0)), 2, 5, false);
  for (auto _ : st) benchmark::DoNotOptimize(cn4::all_pairs_paths(g, true).longest.length);
}
BENCHMARK(BM_AllPairsPaths)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Multilevel(benchmark::State& st) {
  auto g = preferential(static_cast<std::size_t>(st.range(0)), 3, 6, true);
  for (auto _ : st) {
    Rng rng(7);
    benchmark::DoNotOptimize(cn4::multilevel(g, rng).count);
  }
}
BENCHMARK(BM_Multilevel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_LabelPropagation(benchmark::State& st) {
  auto g = preferential(static_cast<std::size_t>(st.range(0)), 3, 8, true);
  for (auto _ : st) {
    Rng rng(9);
    benchmark::DoNotOptimize(cn4::label_propagation(g, rng).count);
  }
}
BENCHMARK(BM_LabelPropagation)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PowerLawFit(benchmark::State& st) {
  Rng rng(10);
  std::vector<std::int64_t> x(static_cast<std::size_t>(st.range(0)));
  for (auto& v : x) v = cn4::sample_powerlaw(2.2, 1, rng);
  cn4::FitOptions o;
  o.bootstrap = 0;
  for (auto _ : st) benchmark::DoNotOptimize(cn4::powerlaw_fit(x, o).alpha);
}
BENCHMARK(BM_PowerLawFit)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
