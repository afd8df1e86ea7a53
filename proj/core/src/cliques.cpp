#include "cn4/cliques.hpp"

#include <algorithm>
#include <set>

#include "cn4/parallel.hpp"

namespace cn4 {

namespace {

using Set = std::vector<Vertex>;  // kept sorted

Set intersect(const Set& a, std::span<const Vertex> b) {
  Set out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(const Set& a, std::span<const Vertex> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// Bron-Kerbosch with Tomita pivoting.
struct Enumerator {
  const Adjacency& g;
  std::size_t min_size;
  std::vector<std::vector<Vertex>>& out;
  Set r;

  void expand(Set p, Set x) {
    if (p.empty()) {
      if (x.empty() && r.size() >= min_size) {
        Set c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
      }
      return;
    }
    if (r.size() + p.size() < min_size) return;
    Vertex pivot = p.front();
    std::size_t best = 0;
    bool first = true;
    for (const Set* s : {&p, &x})
      for (Vertex u : *s) {
        std::size_t k = intersection_size(p, g.neighbors(u));
        if (first || k > best) {
          best = k;
          pivot = u;
          first = false;
        }
      }
    auto pn = g.neighbors(pivot);
    Set candidates;
    std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
    for (Vertex v : candidates) {
      auto nv = g.neighbors(v);
      r.push_back(v);
      expand(intersect(p, nv), intersect(x, nv));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }
};

}  // namespace

Histogram CliqueSet::size_distribution(std::size_t min_size) const {
  Histogram h;
  for (const auto& c : cliques)
    if (c.size() >= min_size) ++h[static_cast<std::int64_t>(c.size())];
  return h;
}

std::vector<Vertex> degeneracy_order(const Adjacency& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) max_deg = std::max(max_deg, deg[v] = g.degree(v));
  // One ordered set per degree keeps the tie rule by id.
  std::vector<std::set<Vertex>> bucket(max_deg + 1);
  for (Vertex v = 0; v < n; ++v) bucket[deg[v]].insert(v);
  std::vector<char> done(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  std::size_t low = 0;
  for (std::size_t step = 0; step < n; ++step) {
    while (bucket[low].empty()) ++low;
    Vertex v = *bucket[low].begin();
    bucket[low].erase(bucket[low].begin());
    done[v] = 1;
    order.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (done[u]) continue;
      bucket[deg[u]].erase(u);
      bucket[--deg[u]].insert(u);
    }
    if (low > 0) --low;
  }
  return order;
}

CliqueSet maximal_cliques(const Adjacency& g, std::size_t min_size, unsigned threads) {
  std::size_t n = g.vertex_count();
  auto order = degeneracy_order(g);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  unsigned slots = worker_slots(n, threads, 32);
  std::vector<std::vector<std::vector<Vertex>>> found(slots);
  parallel_for(
      n, threads,
      [&](std::size_t i, unsigned w) {
        Vertex v = order[i];
        Set p, x;
        for (Vertex u : g.neighbors(v)) (position[u] > i ? p : x).push_back(u);
        Enumerator e{g, min_size, found[w], {v}};
        e.expand(std::move(p), std::move(x));
      },
      32);

  CliqueSet out;
  for (auto& f : found)
    for (auto& c : f) out.cliques.push_back(std::move(c));
  std::sort(out.cliques.begin(), out.cliques.end());
  return out;
}

}  // namespace cn4
