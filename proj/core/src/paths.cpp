#include "cn4/paths.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4 {

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

struct Worker {
  std::vector<std::uint32_t> dist;
  std::vector<Vertex> queue;
  std::vector<std::uint64_t> counts;  // by length
  std::uint32_t best_len = 0;
  Vertex best_s = 0;
  Vertex best_t = 0;
};

bool better(std::uint32_t len, Vertex s, Vertex t, const Worker& w) {
  if (len != w.best_len) return len > w.best_len;
  return std::tie(s, t) < std::tie(w.best_s, w.best_t);
}

}  // namespace

std::uint64_t PathLengthHistogram::total_pairs() const {
  std::uint64_t t = unreachable;
  for (auto [len, c] : lengths) t += c;
  return t;
}

PathSummary all_pairs_paths(const Adjacency& g, bool directed, unsigned threads) {
  std::size_t n = g.vertex_count();
  unsigned slots = worker_slots(n, threads, 16);
  std::vector<Worker> workers(slots);
  for (auto& w : workers) {
    w.dist.assign(n, kUnseen);
    w.queue.reserve(n);
  }
  parallel_for(
      n, threads,
      [&](std::size_t si, unsigned wi) {
        Vertex s = static_cast<Vertex>(si);
        if (g.degree(s) == 0) return;
        Worker& w = workers[wi];
        w.queue.clear();
        w.queue.push_back(s);
        w.dist[s] = 0;
        for (std::size_t head = 0; head < w.queue.size(); ++head) {
          Vertex v = w.queue[head];
          std::uint32_t d = w.dist[v] + 1;
          for (Vertex u : g.neighbors(v)) {
            if (w.dist[u] != kUnseen) continue;
            w.dist[u] = d;
            w.queue.push_back(u);
            if (!directed && u < s) continue;
            if (w.counts.size() <= d) w.counts.resize(d + 1, 0);
            ++w.counts[d];
            if (better(d, s, u, w)) {
              w.best_len = d;
              w.best_s = s;
              w.best_t = u;
            }
          }
        }
        for (Vertex v : w.queue) w.dist[v] = kUnseen;
      },
      16);

  PathSummary out;
  out.histogram.directed = directed;
  std::uint64_t reached = 0;
  Worker best;
  for (const auto& w : workers) {
    for (std::size_t len = 1; len < w.counts.size(); ++len) {
      if (!w.counts[len]) continue;
      out.histogram.lengths[static_cast<std::int64_t>(len)] += w.counts[len];
      reached += w.counts[len];
    }
    if (w.best_len > 0 && better(w.best_len, w.best_s, w.best_t, best)) {
      best.best_len = w.best_len;
      best.best_s = w.best_s;
      best.best_t = w.best_t;
    }
  }
  std::uint64_t nn = n;
  std::uint64_t total = directed ? nn * (nn ? nn - 1 : 0) : nn * (nn ? nn - 1 : 0) / 2;
  out.histogram.unreachable = total - reached;

  if (best.best_len > 0) {
    // Rebuild one shortest path; parents are the first discoverers.
    std::vector<Vertex> parent(n, static_cast<Vertex>(kUnseen));
    std::vector<Vertex> queue{best.best_s};
    parent[best.best_s] = best.best_s;
    for (std::size_t head = 0; head < queue.size() && parent[best.best_t] == kUnseen; ++head) {
      Vertex v = queue[head];
      for (Vertex u : g.neighbors(v))
        if (parent[u] == kUnseen) {
          parent[u] = v;
          queue.push_back(u);
        }
    }
    out.longest.length = best.best_len;
    for (Vertex v = best.best_t; v != best.best_s; v = parent[v]) out.longest.path.push_back(v);
    out.longest.path.push_back(best.best_s);
    std::reverse(out.longest.path.begin(), out.longest.path.end());
  }
  return out;
}

double average_path_length(const PathLengthHistogram& h) {
  double sum = 0, count = 0;
  for (auto [len, c] : h.lengths) {
    sum += static_cast<double>(len) * static_cast<double>(c);
    count += static_cast<double>(c);
  }
  if (count == 0) throw UndefinedError("average path length of a graph without edges");
  return sum / count;
}

}  // namespace cn4
