#include "cn4/cores.hpp"

#include <algorithm>

namespace cn4 {

namespace {

// Peels a multigraph given as neighbor lists with repeats; extra[v] is
// degree that never decreases while v remains (its loops).
std::vector<std::uint32_t> peel(std::size_t n, const std::vector<std::size_t>& offsets,
                                const std::vector<Vertex>& targets,
                                const std::vector<std::uint32_t>& extra) {
  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(offsets[v + 1] - offsets[v]) + extra[v];
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (auto d : deg) ++bin[d + 1];
  for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
  std::vector<Vertex> vert(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> fill(bin.begin(), bin.end() - 1);
    for (Vertex v = 0; v < n; ++v) {
      pos[v] = fill[deg[v]]++;
      vert[pos[v]] = v;
    }
  }
  // bin[d] is now the first position holding degree d.
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = vert[i];
    for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) {
      Vertex u = targets[e];
      if (deg[u] > deg[v]) {
        std::uint32_t du = deg[u];
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        Vertex w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return deg;
}

struct MultiAdj {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> targets;
  std::vector<std::uint32_t> extra;
};

MultiAdj build(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  MultiAdj m;
  m.offsets.assign(n + 1, 0);
  m.extra.assign(n, 0);
  for (auto [u, v] : edges) {
    if (u == v) {
      m.extra[u] += 2;
    } else {
      ++m.offsets[u + 1];
      ++m.offsets[v + 1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) m.offsets[i + 1] += m.offsets[i];
  m.targets.resize(m.offsets[n]);
  std::vector<std::size_t> fill(m.offsets.begin(), m.offsets.end() - 1);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    m.targets[fill[u]++] = v;
    m.targets[fill[v]++] = u;
  }
  return m;
}

}  // namespace

std::vector<std::uint32_t> coreness(const Adjacency& g) {
  std::vector<std::uint32_t> extra(g.vertex_count(), 0);
  return peel(g.vertex_count(), g.offsets, g.targets, extra);
}

std::vector<std::uint32_t> coreness(const InducedGraph& g, CoreView view) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  switch (view) {
    case CoreView::undirected: edges = g.undirected.pairs; break;
    case CoreView::directed: edges = g.directed.pairs; break;
    case CoreView::multigraph:
      edges.reserve(g.multi.size());
      for (const auto& e : g.multi) edges.emplace_back(e.source, e.target);
      break;
  }
  MultiAdj m = build(g.vertex_count, edges);
  return peel(g.vertex_count, m.offsets, m.targets, m.extra);
}

CoreFiltration core_filtration(const InducedGraph& g, CoreView view) {
  CoreFiltration f;
  f.coreness = coreness(g, view);
  std::uint32_t kmax = 0;
  for (auto c : f.coreness) {
    ++f.distribution[c];
    kmax = std::max(kmax, c);
  }
  // Counts indexed by the level at which an edge or vertex drops out.
  std::vector<std::size_t> vert(kmax + 2, 0), multi(kmax + 2, 0), dir(kmax + 2, 0),
      undir(kmax + 2, 0);
  auto level = [&](Vertex u, Vertex v) { return std::min(f.coreness[u], f.coreness[v]); };
  for (auto c : f.coreness) ++vert[c];
  for (const auto& e : g.multi) ++multi[level(e.source, e.target)];
  for (auto [u, v] : g.directed.pairs) ++dir[level(u, v)];
  for (auto [u, v] : g.undirected.pairs) ++undir[level(u, v)];
  for (std::size_t k = kmax + 1; k-- > 0;) {
    vert[k] += vert[k + 1];
    multi[k] += multi[k + 1];
    dir[k] += dir[k + 1];
    undir[k] += undir[k + 1];
  }
  if (g.vertex_count == 0) return f;
  for (std::uint32_t k = 0; k <= kmax; ++k) {
    CoreLevel l;
    l.k = k;
    l.vertices = vert[k];
    l.multi_edges = multi[k];
    l.directed_edges = dir[k];
    l.undirected_edges = undir[k];
    double n = static_cast<double>(l.vertices);
    if (l.vertices) {
      l.multi_avg_degree = 2.0 * static_cast<double>(l.multi_edges) / n;
      l.directed_avg_degree = 2.0 * static_cast<double>(l.directed_edges) / n;
      l.undirected_avg_degree = 2.0 * static_cast<double>(l.undirected_edges) / n;
    }
    f.levels.push_back(l);
  }
  return f;
}

}  // namespace cn4
