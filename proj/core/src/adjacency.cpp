#include "cn4/adjacency.hpp"

#include <algorithm>

namespace cn4 {

bool Adjacency::has_arc(Vertex u, Vertex v) const {
  auto n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

Adjacency make_adjacency(std::size_t n, std::span<const std::pair<Vertex, Vertex>> arcs,
                         bool symmetric) {
  std::vector<std::pair<Vertex, Vertex>> all;
  all.reserve(arcs.size() * (symmetric ? 2 : 1));
  for (auto [u, v] : arcs) {
    if (u == v) continue;
    all.emplace_back(u, v);
    if (symmetric) all.emplace_back(v, u);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  Adjacency g;
  g.offsets.assign(n + 1, 0);
  for (auto [u, v] : all) ++g.offsets[u + 1];
  for (std::size_t i = 0; i < n; ++i) g.offsets[i + 1] += g.offsets[i];
  g.targets.reserve(all.size());
  for (auto [u, v] : all) g.targets.push_back(v);
  return g;
}

Adjacency transpose(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  Adjacency t;
  t.offsets.assign(n + 1, 0);
  for (Vertex v : g.targets) ++t.offsets[v + 1];
  for (std::size_t i = 0; i < n; ++i) t.offsets[i + 1] += t.offsets[i];
  t.targets.resize(g.targets.size());
  std::vector<std::size_t> fill(t.offsets.begin(), t.offsets.end() - 1);
  // Sources are visited in increasing order, so each list comes out sorted.
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) t.targets[fill[v]++] = u;
  return t;
}

Adjacency induced_subgraph(const Adjacency& g, const std::vector<char>& keep) {
  std::size_t n = g.vertex_count();
  Adjacency s;
  s.offsets.assign(n + 1, 0);
  for (Vertex u = 0; u < n; ++u) {
    if (keep[u])
      for (Vertex v : g.neighbors(u))
        if (keep[v]) s.targets.push_back(v);
    s.offsets[u + 1] = s.targets.size();
  }
  return s;
}

Compacted compact_subgraph(const Adjacency& g, const std::vector<char>& keep) {
  std::size_t n = g.vertex_count();
  constexpr Vertex kDropped = static_cast<Vertex>(-1);
  std::vector<Vertex> renumber(n, kDropped);
  Compacted c;
  for (Vertex v = 0; v < n; ++v)
    if (keep[v]) {
      renumber[v] = static_cast<Vertex>(c.original.size());
      c.original.push_back(v);
    }
  c.graph.offsets.assign(c.original.size() + 1, 0);
  for (std::size_t i = 0; i < c.original.size(); ++i) {
    for (Vertex u : g.neighbors(c.original[i]))
      if (renumber[u] != kDropped) c.graph.targets.push_back(renumber[u]);
    c.graph.offsets[i + 1] = c.graph.targets.size();
  }
  return c;
}

}  // namespace cn4
