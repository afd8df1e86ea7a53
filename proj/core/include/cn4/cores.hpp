#pragma once

#include <cstdint>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/degree.hpp"
#include "cn4/graph.hpp"

namespace cn4 {

// Which degree the peeling uses. In every view a kept self-loop adds 2.
//   undirected: collapsed undirected graph
//   directed:   collapsed directed graph, in-degree + out-degree
//   multigraph: every assertion edge counts
enum class CoreView : std::uint8_t { undirected, directed, multigraph };

// Coreness of a simple undirected graph (Batagelj-Zaversnik bucket peeling).
std::vector<std::uint32_t> coreness(const Adjacency& g);

std::vector<std::uint32_t> coreness(const InducedGraph& g, CoreView view);

struct CoreLevel {
  std::uint32_t k = 0;
  std::size_t vertices = 0;
  std::size_t multi_edges = 0;
  std::size_t directed_edges = 0;
  std::size_t undirected_edges = 0;
  double multi_avg_degree = 0;
  double directed_avg_degree = 0;
  double undirected_avg_degree = 0;
};

struct CoreFiltration {
  std::vector<std::uint32_t> coreness;
  Histogram distribution;        // coreness -> vertex count
  std::vector<CoreLevel> levels;  // k = 0 .. max coreness
};

CoreFiltration core_filtration(const InducedGraph& g, CoreView view = CoreView::undirected);

}  // namespace cn4
