#pragma once

#include <cstddef>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/degree.hpp"

namespace cn4 {

// Maximal cliques, each sorted ascending, listed in lexicographic order.
struct CliqueSet {
  std::vector<std::vector<Vertex>> cliques;

  // size -> number of maximal cliques of that size, for sizes >= min_size.
  Histogram size_distribution(std::size_t min_size = 1) const;
};

// Input: symmetric simple adjacency. Isolated vertices are cliques of size 1;
// cliques smaller than `min_size` are not kept.
CliqueSet maximal_cliques(const Adjacency& g, std::size_t min_size = 1, unsigned threads = 1);

// Vertices in an order where each has as few later neighbors as possible
// (smallest-last peeling); ties go to the smaller id.
std::vector<Vertex> degeneracy_order(const Adjacency& g);

}  // namespace cn4
