#pragma once

#include <cstdint>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/degree.hpp"

namespace cn4 {

// Directed: ordered pairs (s, t), s != t. Undirected (symmetric input):
// unordered pairs counted once.
struct PathLengthHistogram {
  bool directed = true;
  Histogram lengths;  // finite length -> pair count
  std::uint64_t unreachable = 0;
  std::uint64_t total_pairs() const;
};

struct Geodesic {
  std::uint32_t length = 0;
  std::vector<Vertex> path;  // source .. target; empty when the graph has no edges
};

struct PathSummary {
  PathLengthHistogram histogram;
  // Longest finite shortest path, ties broken by smallest (source, target).
  Geodesic longest;
};

// BFS from every vertex. For an undirected graph pass the symmetric adjacency.
PathSummary all_pairs_paths(const Adjacency& g, bool directed, unsigned threads = 1);

// Mean over finite pairs. Throws UndefinedError when there are none.
double average_path_length(const PathLengthHistogram& h);

}  // namespace cn4
