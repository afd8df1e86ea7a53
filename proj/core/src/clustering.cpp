#include "cn4/clustering.hpp"

#include <atomic>

#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4 {

namespace {

// Orients every edge from lower to higher (degree, id) rank.
bool ranks_below(const Adjacency& g, Vertex u, Vertex v) {
  std::size_t du = g.degree(u), dv = g.degree(v);
  return du != dv ? du < dv : u < v;
}

}  // namespace

std::vector<std::uint64_t> triangles_per_vertex(const Adjacency& g, unsigned threads) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> forward(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u))
      if (ranks_below(g, u, v)) forward[u].push_back(v);

  std::vector<std::atomic<std::uint64_t>> count(n);
  unsigned slots = worker_slots(n, threads, 64);
  std::vector<std::vector<char>> marks(slots, std::vector<char>(n, 0));
  parallel_for(
      n, threads,
      [&](std::size_t ui, unsigned w) {
        Vertex u = static_cast<Vertex>(ui);
        auto& mark = marks[w];
        for (Vertex v : forward[u]) mark[v] = 1;
        for (Vertex v : forward[u])
          for (Vertex x : forward[v])
            if (mark[x]) {
              count[u].fetch_add(1, std::memory_order_relaxed);
              count[v].fetch_add(1, std::memory_order_relaxed);
              count[x].fetch_add(1, std::memory_order_relaxed);
            }
        for (Vertex v : forward[u]) mark[v] = 0;
      },
      64);
  std::vector<std::uint64_t> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = count[v].load();
  return out;
}

double transitivity_global(const Adjacency& g, unsigned threads) {
  auto tri = triangles_per_vertex(g, threads);
  double closed = 0, triples = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double d = static_cast<double>(g.degree(v));
    closed += static_cast<double>(tri[v]);
    triples += d * (d - 1) / 2;
  }
  if (triples == 0) throw UndefinedError("transitivity of a graph without connected triples");
  return closed / triples;
}

double clustering_avg(const Adjacency& g, ClusteringMode mode, unsigned threads) {
  auto tri = triangles_per_vertex(g, threads);
  double sum = 0;
  std::size_t counted = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double d = static_cast<double>(g.degree(v));
    if (d < 2) {
      if (mode == ClusteringMode::zero) ++counted;
      continue;
    }
    sum += static_cast<double>(tri[v]) / (d * (d - 1) / 2);
    ++counted;
  }
  if (counted == 0) throw UndefinedError("no vertex qualifies for the clustering average");
  return sum / static_cast<double>(counted);
}

}  // namespace cn4
