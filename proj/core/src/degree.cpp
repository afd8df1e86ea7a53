#include "cn4/degree.hpp"

#include <algorithm>

#include "cn4/error.hpp"

namespace cn4 {

Degrees degree_stats(const InducedGraph& g, GraphKind kind) {
  Degrees d;
  d.total.assign(g.vertex_count, 0);
  switch (kind) {
    case GraphKind::multi:
      d.in.assign(g.vertex_count, 0);
      d.out.assign(g.vertex_count, 0);
      for (const auto& e : g.multi) ++d.out[e.source], ++d.in[e.target];
      break;
    case GraphKind::directed:
      d.in.assign(g.vertex_count, 0);
      d.out.assign(g.vertex_count, 0);
      for (auto [u, v] : g.directed.pairs) ++d.out[u], ++d.in[v];
      break;
    case GraphKind::undirected:
      for (auto [u, v] : g.undirected.pairs) ++d.total[u], ++d.total[v];
      return d;
  }
  for (std::size_t v = 0; v < g.vertex_count; ++v) d.total[v] = d.in[v] + d.out[v];
  return d;
}

Histogram histogram(std::span<const std::uint64_t> values) {
  Histogram h;
  for (auto v : values) ++h[static_cast<std::int64_t>(v)];
  return h;
}

std::vector<RankedVertex> top_k(std::span<const std::uint64_t> degrees, std::size_t k) {
  std::vector<RankedVertex> all(degrees.size());
  for (std::size_t v = 0; v < degrees.size(); ++v) all[v] = {static_cast<Vertex>(v), degrees[v]};
  k = std::min(k, all.size());
  auto cmp = [](const RankedVertex& a, const RankedVertex& b) {
    return a.degree != b.degree ? a.degree > b.degree : a.vertex < b.vertex;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), cmp);
  all.resize(k);
  return all;
}

std::size_t edge_count(const InducedGraph& g, GraphKind kind) {
  switch (kind) {
    case GraphKind::multi: return g.multi.size();
    case GraphKind::directed: return g.directed.size();
    case GraphKind::undirected: return g.undirected.size();
  }
  return 0;
}

double average_degree(const InducedGraph& g, GraphKind kind, bool exclude_isolated) {
  std::size_t n = exclude_isolated ? g.vertex_count - g.isolated_count() : g.vertex_count;
  if (n == 0) throw UndefinedError("average degree of a graph without vertices");
  return 2.0 * static_cast<double>(edge_count(g, kind)) / static_cast<double>(n);
}

std::vector<std::int64_t> degree_sample(const InducedGraph& g) {
  Degrees d = degree_stats(g, GraphKind::multi);
  std::vector<std::int64_t> out;
  for (auto t : d.total)
    if (t > 0) out.push_back(static_cast<std::int64_t>(t));
  return out;
}

}  // namespace cn4
