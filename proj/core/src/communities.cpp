#include "cn4/communities.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cn4/components.hpp"
#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4 {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Symmetric weighted graph; loop[i] is the weight of i's self-loop, which
// counts twice towards its strength.
struct Weighted {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::vector<double> loop;

  std::size_t size() const { return loop.size(); }
};

Weighted from_adjacency(const Adjacency& g) {
  Weighted w;
  w.offsets = g.offsets;
  w.targets.assign(g.targets.begin(), g.targets.end());
  w.weights.assign(g.targets.size(), 1.0);
  w.loop.assign(g.vertex_count(), 0.0);
  return w;
}

Weighted aggregate(const Weighted& w, const std::vector<std::uint32_t>& comm, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> members(k);
  for (std::uint32_t v = 0; v < w.size(); ++v) members[comm[v]].push_back(v);
  Weighted out;
  out.loop.assign(k, 0.0);
  out.offsets.assign(1, 0);
  std::vector<double> acc(k, 0.0);
  std::vector<std::uint32_t> seen;
  for (std::uint32_t c = 0; c < k; ++c) {
    for (std::uint32_t v : members[c]) {
      out.loop[c] += w.loop[v];
      for (std::size_t e = w.offsets[v]; e < w.offsets[v + 1]; ++e) {
        std::uint32_t d = comm[w.targets[e]];
        if (d == c) {
          out.loop[c] += w.weights[e] / 2;  // each internal edge is seen twice
          continue;
        }
        if (acc[d] == 0) seen.push_back(d);
        acc[d] += w.weights[e];
      }
    }
    std::sort(seen.begin(), seen.end());
    for (std::uint32_t d : seen) {
      out.targets.push_back(d);
      out.weights.push_back(acc[d]);
      acc[d] = 0;
    }
    seen.clear();
    out.offsets.push_back(out.targets.size());
  }
  return out;
}

// One level of local moving. Returns whether any vertex changed community;
// `comm` ends up with dense ids.
bool local_moving(const Weighted& w, Rng& rng, std::vector<std::uint32_t>& comm, std::size_t& k) {
  std::size_t n = w.size();
  std::vector<double> strength(n, 0.0);
  double two_m = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    strength[v] = 2 * w.loop[v];
    for (std::size_t e = w.offsets[v]; e < w.offsets[v + 1]; ++e) strength[v] += w.weights[e];
    two_m += strength[v];
  }
  comm.resize(n);
  std::iota(comm.begin(), comm.end(), 0u);
  std::vector<double> total(strength);
  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> near;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);

  bool moved_any = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::uint32_t v : order) {
      std::uint32_t own = comm[v];
      for (std::size_t e = w.offsets[v]; e < w.offsets[v + 1]; ++e) {
        std::uint32_t c = comm[w.targets[e]];
        if (link[c] == 0) near.push_back(c);
        link[c] += w.weights[e];
      }
      total[own] -= strength[v];
      double scale = strength[v] / two_m;
      std::uint32_t best = own;
      double best_gain = link[own] - total[own] * scale;
      for (std::uint32_t c : near) {
        double gain = link[c] - total[c] * scale;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      total[best] += strength[v];
      if (best != own) {
        comm[v] = best;
        moved = moved_any = true;
      }
      for (std::uint32_t c : near) link[c] = 0;
      link[own] = 0;
      near.clear();
    }
  }
  Partition p = normalize(comm);
  comm = std::move(p.community);
  k = p.count;
  return moved_any;
}

}  // namespace

Partition normalize(const std::vector<std::uint32_t>& labels) {
  Partition p;
  p.community.resize(labels.size());
  std::vector<std::uint32_t> renumber;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    std::uint32_t l = labels[v];
    if (l >= renumber.size()) renumber.resize(static_cast<std::size_t>(l) + 1, kNone);
    if (renumber[l] == kNone) renumber[l] = static_cast<std::uint32_t>(p.count++);
    p.community[v] = renumber[l];
  }
  return p;
}

double modularity(const Adjacency& g, const Partition& p) {
  double two_m = static_cast<double>(g.arc_count());
  if (two_m == 0) throw UndefinedError("modularity of a graph without edges");
  std::vector<double> inside(p.count, 0.0), degree(p.count, 0.0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::uint32_t c = p.community[v];
    degree[c] += static_cast<double>(g.degree(v));
    for (Vertex u : g.neighbors(v))
      if (p.community[u] == c) inside[c] += 1;
  }
  double q = 0;
  for (std::size_t c = 0; c < p.count; ++c) {
    double share = degree[c] / two_m;
    q += inside[c] / two_m - share * share;
  }
  return q;
}

Partition label_propagation(const Adjacency& g, Rng& rng) {
  std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint32_t> seen, dominant;
  for (bool changed = true; changed;) {
    changed = false;
    rng.shuffle(order);
    for (std::uint32_t v : order) {
      if (g.degree(v) == 0) continue;
      std::uint32_t top = 0;
      for (Vertex u : g.neighbors(v)) {
        std::uint32_t l = label[u];
        if (count[l]++ == 0) seen.push_back(l);
        top = std::max(top, count[l]);
      }
      if (count[label[v]] != top) {
        for (std::uint32_t l : seen)
          if (count[l] == top) dominant.push_back(l);
        std::sort(dominant.begin(), dominant.end());
        label[v] = dominant[rng.below(dominant.size())];
        changed = true;
        dominant.clear();
      }
      for (std::uint32_t l : seen) count[l] = 0;
      seen.clear();
    }
  }
  return normalize(label);
}

Partition multilevel(const Adjacency& g, Rng& rng) {
  std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> assignment(n);
  std::iota(assignment.begin(), assignment.end(), 0u);
  if (g.arc_count() == 0) return normalize(assignment);
  Weighted level = from_adjacency(g);
  for (;;) {
    std::vector<std::uint32_t> comm;
    std::size_t k = 0;
    if (!local_moving(level, rng, comm, k)) break;
    for (auto& a : assignment) a = comm[a];
    level = aggregate(level, comm, k);
  }
  return normalize(assignment);
}

std::string_view to_string(CommunityAlgorithm a) {
  return a == CommunityAlgorithm::label_propagation ? "lp" : "multilevel";
}

CommunityAlgorithm parse_community_algorithm(std::string_view s) {
  if (s == "lp") return CommunityAlgorithm::label_propagation;
  if (s == "multilevel") return CommunityAlgorithm::multilevel;
  throw ParameterError("unknown community algorithm: " + std::string(s));
}

Partition run_once(CommunityAlgorithm algo, const Adjacency& g, Rng& rng) {
  return algo == CommunityAlgorithm::label_propagation ? label_propagation(g, rng)
                                                       : multilevel(g, rng);
}

RunStats run_stats(CommunityAlgorithm algo, const Adjacency& g, std::size_t runs,
                   std::uint64_t seed, unsigned threads) {
  if (runs == 0) throw ParameterError("runs must be at least 1");
  if (g.arc_count() == 0) throw UndefinedError("community statistics of a graph without edges");
  std::size_t components = weak_components(g).count();
  std::vector<std::size_t> kappa(runs);
  std::vector<double> mu(runs);
  parallel_for(runs, threads, [&](std::size_t r, unsigned) {
    Rng rng(seed, r);
    Partition p = run_once(algo, g, rng);
    kappa[r] = p.count;
    mu[r] = modularity(g, p);
  });
  RunStats s;
  s.runs = runs;
  s.kappa_min = *std::min_element(kappa.begin(), kappa.end());
  s.kappa_max = *std::max_element(kappa.begin(), kappa.end());
  s.mu_min = *std::min_element(mu.begin(), mu.end());
  s.mu_max = *std::max_element(mu.begin(), mu.end());
  double ks = 0, ms = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    ks += static_cast<double>(kappa[r]);
    ms += mu[r];
    if (kappa[r] == components) ++s.agreeing;
  }
  s.kappa_avg = ks / static_cast<double>(runs);
  s.mu_avg = ms / static_cast<double>(runs);
  return s;
}

}  // namespace cn4
