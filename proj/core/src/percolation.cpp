#include "cn4/percolation.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <string>
#include <unordered_map>

#include "cn4/error.hpp"

namespace cn4 {

namespace {

// Above this many (k-1)-subsets the pairwise overlap strategy is used.
constexpr double kSubsetBudget = 2e7;

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

double choose(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  double c = 1;
  for (std::size_t i = 0; i < r; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

// Cliques sharing a (k-1)-subset: bucket every subset by its bytes.
void join_by_subsets(const std::vector<const std::vector<Vertex>*>& big, std::size_t k,
                     DisjointSets& ds) {
  std::unordered_map<std::string, std::size_t> owner;
  std::size_t r = k - 1;
  std::vector<std::size_t> idx(r);
  std::string key(r * sizeof(Vertex), '\0');
  for (std::size_t c = 0; c < big.size(); ++c) {
    const auto& q = *big[c];
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      for (std::size_t i = 0; i < r; ++i)
        std::memcpy(key.data() + i * sizeof(Vertex), &q[idx[i]], sizeof(Vertex));
      auto [it, fresh] = owner.try_emplace(key, c);
      if (!fresh) ds.unite(it->second, c);
      // Next combination in lexicographic order.
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == q.size() - r + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

// Cliques sharing >= k-1 vertices, counted through vertex -> clique lists.
void join_by_overlap(const std::vector<const std::vector<Vertex>*>& big, std::size_t n,
                     std::size_t k, DisjointSets& ds) {
  std::vector<std::vector<std::size_t>> containing(n);
  for (std::size_t c = 0; c < big.size(); ++c)
    for (Vertex v : *big[c]) containing[v].push_back(c);
  std::vector<std::size_t> shared(big.size(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t c = 0; c < big.size(); ++c) {
    for (Vertex v : *big[c])
      for (std::size_t d : containing[v]) {
        if (d <= c) continue;
        if (shared[d]++ == 0) touched.push_back(d);
      }
    for (std::size_t d : touched) {
      if (shared[d] >= k - 1) ds.unite(c, d);
      shared[d] = 0;
    }
    touched.clear();
  }
}

}  // namespace

Histogram Cover::size_distribution() const {
  Histogram h;
  for (const auto& c : communities) ++h[static_cast<std::int64_t>(c.size())];
  return h;
}

Histogram Cover::membership_distribution(const std::vector<char>& mask) const {
  Histogram h;
  for (std::size_t v = 0; v < membership.size(); ++v)
    if (mask[v]) ++h[membership[v]];
  return h;
}

Cover k_clique_percolation(const Adjacency& g, std::size_t k, unsigned threads) {
  if (k < 3) throw ParameterError("clique percolation needs k >= 3");
  return k_clique_percolation(maximal_cliques(g, k, threads), g.vertex_count(), k);
}

Cover k_clique_percolation(const CliqueSet& cliques, std::size_t n, std::size_t k) {
  if (k < 3) throw ParameterError("clique percolation needs k >= 3");
  std::vector<const std::vector<Vertex>*> big;
  double subsets = 0;
  for (const auto& c : cliques.cliques)
    if (c.size() >= k) {
      big.push_back(&c);
      subsets += choose(c.size(), k - 1);
    }
  DisjointSets ds(big.size());
  if (subsets <= kSubsetBudget)
    join_by_subsets(big, k, ds);
  else
    join_by_overlap(big, n, k, ds);

  std::unordered_map<std::size_t, std::size_t> slot;
  std::vector<std::vector<Vertex>> groups;
  for (std::size_t c = 0; c < big.size(); ++c) {
    auto [it, fresh] = slot.try_emplace(ds.find(c), groups.size());
    if (fresh) groups.emplace_back();
    auto& grp = groups[it->second];
    grp.insert(grp.end(), big[c]->begin(), big[c]->end());
  }
  Cover cover;
  cover.membership.assign(n, 0);
  for (auto& grp : groups) {
    std::sort(grp.begin(), grp.end());
    grp.erase(std::unique(grp.begin(), grp.end()), grp.end());
    for (Vertex v : grp) ++cover.membership[v];
  }
  std::sort(groups.begin(), groups.end());
  cover.communities = std::move(groups);
  return cover;
}

}  // namespace cn4
