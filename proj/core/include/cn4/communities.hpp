#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/rng.hpp"

namespace cn4 {

// Non-overlapping communities; ids are dense and numbered by first
// appearance in vertex order.
struct Partition {
  std::vector<std::uint32_t> community;
  std::size_t count = 0;
};

// Renumbers arbitrary labels into a Partition.
Partition normalize(const std::vector<std::uint32_t>& labels);

// Newman-Girvan modularity of a symmetric simple graph. Throws UndefinedError
// when the graph has no edges.
double modularity(const Adjacency& g, const Partition& p);

// Asynchronous label propagation. Each sweep visits vertices in a fresh random
// order; a vertex keeps its label while that label is among the most frequent
// around it, otherwise it takes one of the most frequent uniformly. Stops after
// a sweep without changes.
Partition label_propagation(const Adjacency& g, Rng& rng);

// Louvain: local moving in random order, then aggregation, until a level makes
// no move.
Partition multilevel(const Adjacency& g, Rng& rng);

enum class CommunityAlgorithm : std::uint8_t { label_propagation, multilevel };

std::string_view to_string(CommunityAlgorithm a);
// Accepts "lp" and "multilevel"; throws ParameterError otherwise.
CommunityAlgorithm parse_community_algorithm(std::string_view s);

Partition run_once(CommunityAlgorithm algo, const Adjacency& g, Rng& rng);

struct RunStats {
  std::size_t runs = 0;
  double kappa_avg = 0;
  std::size_t kappa_min = 0;
  std::size_t kappa_max = 0;
  double mu_avg = 0;
  double mu_min = 0;
  double mu_max = 0;
  // Runs whose community count equals the number of connected components.
  std::size_t agreeing = 0;
};

// Run r draws from Rng(seed, r); runs are spread over `threads` workers.
// Throws UndefinedError when the graph has no edges, ParameterError for runs == 0.
RunStats run_stats(CommunityAlgorithm algo, const Adjacency& g, std::size_t runs,
                   std::uint64_t seed, unsigned threads = 1);

}  // namespace cn4
