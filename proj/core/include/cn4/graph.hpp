#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cn4/adjacency.hpp"
#include "cn4/closure.hpp"

namespace cn4 {

enum class ScoreFilter : std::uint8_t { all, positive };
enum class Loops : std::uint8_t { keep, drop };
// A frequency value of 0 counts as negative polarity (non-positive).
enum class Polarity : std::uint8_t { negative, positive, both };

struct FrequencyRange {
  std::int64_t lo = -10;
  std::int64_t hi = 10;
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  bool operator==(const FrequencyRange&) const = default;
};

bool polarity_matches(Polarity p, std::int64_t frequency_value);

struct GraphSpec {
  ScoreFilter score = ScoreFilter::positive;
  Loops loops = Loops::keep;
  Polarity polarity = Polarity::both;
  FrequencyRange frequency;
  std::optional<std::vector<Index>> relations;  // nullopt = every relation

  // Throws ParameterError.
  void validate() const;
  bool admits(const ClosedKB& kb, const ClosedAssertion& a) const;
  std::string label() const;
};

std::string_view to_string(ScoreFilter s);
std::string_view to_string(Loops l);
std::string_view to_string(Polarity p);

struct MultiEdge {
  Vertex source = 0;
  Vertex target = 0;
  Index assertion = 0;
  bool operator==(const MultiEdge&) const = default;
};

// Endpoint pairs in increasing order, each carrying the indices of the
// assertions that produced it (ascending).
struct CollapsedEdges {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<std::size_t> offsets{0};
  std::vector<Index> labels;

  std::size_t size() const { return pairs.size(); }
  std::span<const Index> labels_of(std::size_t i) const {
    return {labels.data() + offsets[i], labels.data() + offsets[i + 1]};
  }
  std::size_t loop_count() const;
};

struct InducedGraph {
  std::size_t vertex_count = 0;
  std::vector<MultiEdge> multi;  // assertion order
  CollapsedEdges directed;
  CollapsedEdges undirected;  // first endpoint <= second

  // Vertices touched by no edge (loops included).
  std::size_t isolated_count() const;
  std::vector<char> touched() const;
};

// Vertex universe: the input concepts [0, kb.input_concept_count).
InducedGraph induce(const ClosedKB& kb, const GraphSpec& spec);
// Builds the collapsed views from a raw multigraph.
InducedGraph from_multiedges(std::size_t vertex_count, std::vector<MultiEdge> edges);

// Simple views without loops.
Adjacency out_adjacency(const InducedGraph& g);
Adjacency undirected_adjacency(const InducedGraph& g);

struct EdgeCounts {
  std::size_t multi = 0;
  std::size_t directed = 0;
  std::size_t undirected = 0;
  std::size_t isolated = 0;
};

EdgeCounts edge_counts(const InducedGraph& g);

struct PolaritySplit {
  std::size_t negative = 0;
  std::size_t positive = 0;
  std::size_t total() const { return negative + positive; }
};

struct RelationDecomposition {
  Index relation = 0;
  PolaritySplit edges;
  PolaritySplit loops;
};

// One row per relation in index order; multigraph counts with loops kept.
std::vector<RelationDecomposition> decompose_by_relation(const ClosedKB& kb, ScoreFilter score);

struct RangeCounts {
  FrequencyRange range;
  std::size_t multi_with_loops = 0;
  std::size_t multi_without_loops = 0;
  std::size_t directed_with_loops = 0;
  std::size_t directed_without_loops = 0;
  std::size_t undirected_with_loops = 0;
  std::size_t undirected_without_loops = 0;
};

// {-10}, {-10..-9}, ..., {-10..0}, then {0..10}, {1..10}, ..., {10}.
std::vector<FrequencyRange> default_frequency_ranges();

// Positive-score assertions only, all relations.
std::vector<RangeCounts> edges_by_frequency_range(const ClosedKB& kb,
                                                  std::span<const FrequencyRange> ranges);

// Edge list files: "c1 c2 a" per multigraph edge; "c1 c2 N a1 .. aN" per
// collapsed edge.
void write_edges_multi(const InducedGraph& g, std::ostream& out);
void write_edges_collapsed(const CollapsedEdges& e, std::ostream& out);

}  // namespace cn4
