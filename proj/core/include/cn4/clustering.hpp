#pragma once

#include <cstdint>
#include <vector>

#include "cn4/adjacency.hpp"

namespace cn4 {

// Inputs are symmetric simple adjacencies (loops already dropped).

// Triangles through each vertex.
std::vector<std::uint64_t> triangles_per_vertex(const Adjacency& g, unsigned threads = 1);

// 3 * triangles / connected triples. Throws UndefinedError without triples.
double transitivity_global(const Adjacency& g, unsigned threads = 1);

enum class ClusteringMode : std::uint8_t {
  nan,   // vertices of degree < 2 are left out of the average
  zero,  // they contribute 0
};

// Throws UndefinedError when no vertex qualifies.
double clustering_avg(const Adjacency& g, ClusteringMode mode, unsigned threads = 1);

}  // namespace cn4
