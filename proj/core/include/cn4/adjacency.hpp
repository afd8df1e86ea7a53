#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cn4 {

using Vertex = std::uint32_t;

// Compressed neighbor lists of a simple graph: sorted, no duplicates, no loops.
struct Adjacency {
  std::vector<std::size_t> offsets{0};
  std::vector<Vertex> targets;

  std::size_t vertex_count() const { return offsets.size() - 1; }
  std::size_t arc_count() const { return targets.size(); }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets[v + 1] - offsets[v]; }
  bool has_arc(Vertex u, Vertex v) const;
};

// With `symmetric`, every pair is inserted in both directions.
Adjacency make_adjacency(std::size_t n, std::span<const std::pair<Vertex, Vertex>> arcs,
                         bool symmetric);

// Arcs reversed.
Adjacency transpose(const Adjacency& g);

// Subgraph induced by vertices with keep[v] != 0; vertex ids are preserved.
Adjacency induced_subgraph(const Adjacency& g, const std::vector<char>& keep);

// Subgraph on the kept vertices, renumbered 0..k-1 in increasing order.
struct Compacted {
  Adjacency graph;
  std::vector<Vertex> original;  // new id -> old id
};

Compacted compact_subgraph(const Adjacency& g, const std::vector<char>& keep);

}  // namespace cn4
