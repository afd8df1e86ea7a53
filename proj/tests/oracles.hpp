#pragma once

// Slow reference implementations used by the unit tests and the acceptance
// runner. They share no code with the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/closure.hpp"
#include "cn4/rng.hpp"

namespace cn4::oracle {

using VertexSets = std::vector<std::vector<Vertex>>;

// Symmetric G(n, p).
inline Adjacency random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p) e.emplace_back(u, v);
  return make_adjacency(n, e, true);
}

// Directed G(n, p) without loops.
inline Adjacency random_digraph(std::size_t n, double p, Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && rng.uniform() < p) e.emplace_back(u, v);
  return make_adjacency(n, e, false);
}

inline std::vector<std::vector<char>> matrix(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) m[u][v] = 1;
  return m;
}

// Every subset checked for being a clique and for maximality; n <= 20.
inline VertexSets maximal_cliques(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  auto a = matrix(g);
  std::vector<char> clique(std::size_t{1} << n, 0);
  clique[0] = 1;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::uint32_t low = static_cast<std::uint32_t>(__builtin_ctz(s));
    std::uint32_t rest = s & (s - 1);
    bool ok = clique[rest];
    for (std::uint32_t v = 0; ok && v < n; ++v)
      if ((rest >> v) & 1) ok = a[low][v];
    clique[s] = ok;
  }
  VertexSets out;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    if (!clique[s]) continue;
    bool maximal = true;
    for (std::uint32_t v = 0; maximal && v < n; ++v)
      if (!((s >> v) & 1) && clique[s | (1u << v)]) maximal = false;
    if (!maximal) continue;
    std::vector<Vertex> c;
    for (std::uint32_t v = 0; v < n; ++v)
      if ((s >> v) & 1) c.push_back(v);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// k-cores by repeated deletion, one k at a time.
inline std::vector<std::uint32_t> coreness(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> core(n, 0);
  for (std::uint32_t k = 1;; ++k) {
    std::vector<char> alive(n, 1);
    for (bool changed = true; changed;) {
      changed = false;
      for (Vertex v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        std::uint32_t d = 0;
        for (Vertex u : g.neighbors(v)) d += alive[u];
        if (d < k) {
          alive[v] = 0;
          changed = true;
        }
      }
    }
    bool any = false;
    for (Vertex v = 0; v < n; ++v)
      if (alive[v]) {
        core[v] = k;
        any = true;
      }
    if (!any) return core;
  }
}

// Floyd-Warshall; returns length -> pair count plus the unreachable count.
// Undirected graphs count each unordered pair once.
inline std::pair<std::map<std::int64_t, std::uint64_t>, std::uint64_t> path_histogram(
    const Adjacency& g, bool directed) {
  std::size_t n = g.vertex_count();
  constexpr std::uint32_t kInf = 1u << 30;
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (Vertex u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (Vertex v : g.neighbors(u)) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (d[i][k] != kInf)
        for (std::size_t j = 0; j < n; ++j)
          if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  std::map<std::int64_t, std::uint64_t> h;
  std::uint64_t unreachable = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      if (d[i][j] == kInf)
        ++unreachable;
      else
        ++h[d[i][j]];
    }
  return {h, unreachable};
}

// Strong components from the reachability relation: u and v share a
// component iff each reaches the other. Ids by smallest member.
inline std::vector<std::uint32_t> strong_components(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (Vertex s = 0; s < n; ++s) {
    std::vector<Vertex> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : g.neighbors(v))
        if (!reach[s][u]) {
          reach[s][u] = 1;
          stack.push_back(u);
        }
    }
  }
  std::vector<std::uint32_t> id(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (id[v] != UINT32_MAX) continue;
    for (Vertex u = v; u < n; ++u)
      if (reach[v][u] && reach[u][v]) id[u] = next;
    ++next;
  }
  return id;
}

// (1/2m) sum_ij [A_ij - k_i k_j / 2m] [c_i = c_j].
inline double modularity(const Adjacency& g, const std::vector<std::uint32_t>& community) {
  std::size_t n = g.vertex_count();
  auto a = matrix(g);
  double two_m = static_cast<double>(g.arc_count());
  double q = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (community[i] == community[j])
        q += a[i][j] - static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / two_m;
  return q / two_m;
}

// Explicit k-clique graph: k-cliques are nodes, joined when they share k-1
// vertices; communities are the vertex unions of its components.
inline VertexSets percolation(const Adjacency& g, std::size_t k) {
  std::size_t n = g.vertex_count();
  auto a = matrix(g);
  VertexSets kcliques;
  std::vector<Vertex> cur;
  auto grow = [&](auto&& self, Vertex from) -> void {
    if (cur.size() == k) {
      kcliques.push_back(cur);
      return;
    }
    for (Vertex v = from; v < n; ++v) {
      bool ok = true;
      for (Vertex u : cur) ok = ok && a[u][v];
      if (!ok) continue;
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  grow(grow, 0);
  std::size_t m = kcliques.size();
  std::vector<std::size_t> comp(m, SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] != SIZE_MAX) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < m; ++y) {
        if (comp[y] != SIZE_MAX) continue;
        std::vector<Vertex> common;
        std::set_intersection(kcliques[x].begin(), kcliques[x].end(), kcliques[y].begin(),
                              kcliques[y].end(), std::back_inserter(common));
        if (common.size() + 1 >= k) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  std::vector<std::set<Vertex>> groups(next);
  for (std::size_t s = 0; s < m; ++s) groups[comp[s]].insert(kcliques[s].begin(), kcliques[s].end());
  VertexSets out;
  for (auto& g2 : groups) out.emplace_back(g2.begin(), g2.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct Fact {
  Index a, r, c;
  std::int64_t score, frequency;
};

// A KB holding only what graph and rule analyses read: concepts,
// relations, frequencies (one per value -10..10) and assertions.
inline ClosedKB make_kb(std::size_t concepts, std::size_t relations, const std::vector<Fact>& facts) {
  ClosedKB kb;
  for (std::size_t i = 0; i < concepts; ++i)
    kb.concepts.push_back({static_cast<Id>(i + 1), "c" + std::to_string(i)});
  for (std::size_t i = 0; i < relations; ++i)
    kb.relations.push_back({static_cast<Id>(i + 1), "R" + std::to_string(i), ""});
  for (std::int64_t v = -10; v <= 10; ++v)
    kb.frequencies.push_back({v + 11, v, std::to_string(v)});
  Id id = 1;
  for (const auto& f : facts) {
    ClosedAssertion a;
    a.id = id++;
    a.concept1 = f.a;
    a.concept2 = f.c;
    a.relation = f.r;
    a.frequency = f.frequency + 10;
    a.score = f.score;
    a.raw = kNullIndex;
    a.frame_indicator = 4;
    a.surface_indicator = 15;
    a.raw_indicator = 36;
    a.score_indicator = 1;
    kb.assertions.push_back(a);
  }
  kb.input_concept_count = concepts;
  return kb;
}

inline std::vector<Fact> random_facts(std::size_t concepts, std::size_t relations,
                                      std::size_t count, Rng& rng) {
  std::vector<Fact> f;
  for (std::size_t i = 0; i < count; ++i)
    f.push_back({static_cast<Index>(rng.below(concepts)), static_cast<Index>(rng.below(relations)),
                 static_cast<Index>(rng.below(concepts)),
                 static_cast<std::int64_t>(rng.below(4)) - 1,
                 static_cast<std::int64_t>(rng.below(21)) - 10});
  return f;
}

struct RuleCount {
  std::uint64_t support = 0;
  std::uint64_t successes = 0;
};

// Every (a, b, c) checked directly against the positive-score fact set.
inline RuleCount rule(const std::vector<Fact>& facts, std::size_t concepts, Index x, Index y,
                      Index z) {
  std::set<std::tuple<Index, Index, Index>> present;
  for (const auto& f : facts)
    if (f.score > 0) present.emplace(f.a, f.r, f.c);
  RuleCount out;
  auto n = static_cast<Index>(concepts);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (!present.count({a, x, b})) continue;
      for (Index c = 0; c < n; ++c) {
        if (!present.count({b, y, c})) continue;
        ++out.support;
        if (present.count({a, z, c})) ++out.successes;
      }
    }
  return out;
}

// Label propagation fixpoint: every non-isolated vertex carries one of the
// most frequent labels among its neighbors.
inline bool is_label_fixpoint(const Adjacency& g, const std::vector<std::uint32_t>& label) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    std::map<std::uint32_t, std::size_t> count;
    for (Vertex u : g.neighbors(v)) ++count[label[u]];
    std::size_t top = 0;
    for (auto [l, c] : count) top = std::max(top, c);
    if (count[label[v]] != top) return false;
  }
  return true;
}

}  // namespace cn4::oracle
