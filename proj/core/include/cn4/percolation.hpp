#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/cliques.hpp"
#include "cn4/degree.hpp"

namespace cn4 {

// Overlapping communities. Each community is sorted ascending and the list is
// in lexicographic order; membership[v] counts the communities containing v.
struct Cover {
  std::vector<std::vector<Vertex>> communities;
  std::vector<std::uint32_t> membership;

  Histogram size_distribution() const;
  // membership count -> vertices, over vertices with mask[v] != 0.
  Histogram membership_distribution(const std::vector<char>& mask) const;
};

// k-clique communities. Throws ParameterError for k < 3.
Cover k_clique_percolation(const Adjacency& g, std::size_t k, unsigned threads = 1);

// Same, from an already enumerated clique set of g (n = vertex count).
Cover k_clique_percolation(const CliqueSet& cliques, std::size_t n, std::size_t k);

}  // namespace cn4
