#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cn4/graph.hpp"

namespace cn4 {

using Histogram = std::map<std::int64_t, std::uint64_t>;

enum class GraphKind : std::uint8_t { multi, directed, undirected };

struct Degrees {
  std::vector<std::uint64_t> in;
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> total;  // a loop adds 2
};

// For the undirected kind in and out are left empty.
Degrees degree_stats(const InducedGraph& g, GraphKind kind);

Histogram histogram(std::span<const std::uint64_t> values);

struct RankedVertex {
  Vertex vertex = 0;
  std::uint64_t degree = 0;
};

// Highest degree first, ties by smaller vertex.
std::vector<RankedVertex> top_k(std::span<const std::uint64_t> degrees, std::size_t k);

std::size_t edge_count(const InducedGraph& g, GraphKind kind);

// 2|E|/|V|; with exclude_isolated, |V| counts only touched vertices.
// Throws UndefinedError when |V| = 0.
double average_degree(const InducedGraph& g, GraphKind kind, bool exclude_isolated);

// Total multigraph degrees of touched vertices, in vertex order: the sample
// the power-law fit takes.
std::vector<std::int64_t> degree_sample(const InducedGraph& g);

}  // namespace cn4
