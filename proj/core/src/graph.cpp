#include "cn4/graph.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "cn4/error.hpp"

namespace cn4 {

bool polarity_matches(Polarity p, std::int64_t value) {
  switch (p) {
    case Polarity::negative: return value <= 0;
    case Polarity::positive: return value > 0;
    case Polarity::both: return true;
  }
  return false;
}

std::string_view to_string(ScoreFilter s) { return s == ScoreFilter::all ? "all" : "positive"; }
std::string_view to_string(Loops l) { return l == Loops::keep ? "keep" : "drop"; }
std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::negative: return "neg";
    case Polarity::positive: return "pos";
    case Polarity::both: return "both";
  }
  return "?";
}

void GraphSpec::validate() const {
  if (frequency.lo > frequency.hi)
    throw ParameterError("empty frequency range " + std::to_string(frequency.lo) + ":" +
                         std::to_string(frequency.hi));
  if (frequency.lo < -10 || frequency.hi > 10)
    throw ParameterError("frequency range must lie within -10:10");
}

bool GraphSpec::admits(const ClosedKB& kb, const ClosedAssertion& a) const {
  if (score == ScoreFilter::positive && a.score <= 0) return false;
  if (loops == Loops::drop && a.concept1 == a.concept2) return false;
  std::int64_t v = kb.frequencies[a.frequency].value;
  if (!frequency.contains(v) || !polarity_matches(polarity, v)) return false;
  if (relations && !std::binary_search(relations->begin(), relations->end(), a.relation))
    return false;
  return true;
}

std::string GraphSpec::label() const {
  std::string s = "score=" + std::string(to_string(score)) + " loops=" +
                  std::string(to_string(loops)) + " polarity=" + std::string(to_string(polarity)) +
                  " freq=" + std::to_string(frequency.lo) + ":" + std::to_string(frequency.hi) +
                  " relations=";
  if (!relations) return s + "all";
  for (std::size_t i = 0; i < relations->size(); ++i)
    s += (i ? "," : "") + std::to_string((*relations)[i]);
  return s;
}

std::size_t CollapsedEdges::loop_count() const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.first == p.second; }));
}

std::vector<char> InducedGraph::touched() const {
  std::vector<char> t(vertex_count, 0);
  for (const auto& e : multi) t[e.source] = t[e.target] = 1;
  return t;
}

std::size_t InducedGraph::isolated_count() const {
  auto t = touched();
  return static_cast<std::size_t>(std::count(t.begin(), t.end(), 0));
}

namespace {

CollapsedEdges collapse(std::vector<std::tuple<Vertex, Vertex, Index>> arcs) {
  std::sort(arcs.begin(), arcs.end());
  CollapsedEdges c;
  c.labels.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    auto [u, v, a] = arcs[i];
    if (i == 0 || std::get<0>(arcs[i - 1]) != u || std::get<1>(arcs[i - 1]) != v) {
      if (i) c.offsets.push_back(c.labels.size());
      c.pairs.emplace_back(u, v);
    }
    c.labels.push_back(a);
  }
  if (!arcs.empty()) c.offsets.push_back(c.labels.size());
  return c;
}

}  // namespace

InducedGraph from_multiedges(std::size_t vertex_count, std::vector<MultiEdge> edges) {
  InducedGraph g;
  g.vertex_count = vertex_count;
  std::vector<std::tuple<Vertex, Vertex, Index>> d, u;
  d.reserve(edges.size());
  u.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.source >= vertex_count || e.target >= vertex_count)
      throw ParameterError("edge endpoint outside vertex universe");
    d.emplace_back(e.source, e.target, e.assertion);
    u.emplace_back(std::min(e.source, e.target), std::max(e.source, e.target), e.assertion);
  }
  g.directed = collapse(std::move(d));
  g.undirected = collapse(std::move(u));
  g.multi = std::move(edges);
  return g;
}

InducedGraph induce(const ClosedKB& kb, const GraphSpec& spec) {
  spec.validate();
  GraphSpec s = spec;
  if (s.relations) {
    std::sort(s.relations->begin(), s.relations->end());
    s.relations->erase(std::unique(s.relations->begin(), s.relations->end()), s.relations->end());
  }
  std::vector<MultiEdge> edges;
  for (std::size_t i = 0; i < kb.assertions.size(); ++i) {
    const auto& a = kb.assertions[i];
    if (!s.admits(kb, a)) continue;
    edges.push_back(
        {static_cast<Vertex>(a.concept1), static_cast<Vertex>(a.concept2), static_cast<Index>(i)});
  }
  return from_multiedges(kb.input_concept_count, std::move(edges));
}

Adjacency out_adjacency(const InducedGraph& g) {
  return make_adjacency(g.vertex_count, g.directed.pairs, false);
}

Adjacency undirected_adjacency(const InducedGraph& g) {
  return make_adjacency(g.vertex_count, g.undirected.pairs, true);
}

EdgeCounts edge_counts(const InducedGraph& g) {
  return {g.multi.size(), g.directed.size(), g.undirected.size(), g.isolated_count()};
}

std::vector<RelationDecomposition> decompose_by_relation(const ClosedKB& kb, ScoreFilter score) {
  std::vector<RelationDecomposition> rows(kb.relations.size());
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r].relation = static_cast<Index>(r);
  for (const auto& a : kb.assertions) {
    if (score == ScoreFilter::positive && a.score <= 0) continue;
    bool neg = polarity_matches(Polarity::negative, kb.frequencies[a.frequency].value);
    auto& row = rows[a.relation];
    ++(neg ? row.edges.negative : row.edges.positive);
    if (a.concept1 == a.concept2) ++(neg ? row.loops.negative : row.loops.positive);
  }
  return rows;
}

std::vector<FrequencyRange> default_frequency_ranges() {
  std::vector<FrequencyRange> out;
  for (std::int64_t hi = -10; hi <= 0; ++hi) out.push_back({-10, hi});
  for (std::int64_t lo = 0; lo <= 10; ++lo) out.push_back({lo, 10});
  return out;
}

std::vector<RangeCounts> edges_by_frequency_range(const ClosedKB& kb,
                                                  std::span<const FrequencyRange> ranges) {
  std::vector<RangeCounts> out;
  for (const auto& r : ranges) {
    GraphSpec spec;
    spec.score = ScoreFilter::positive;
    spec.loops = Loops::keep;
    spec.polarity = Polarity::both;
    spec.frequency = r;
    InducedGraph g = induce(kb, spec);
    RangeCounts c;
    c.range = r;
    c.multi_with_loops = g.multi.size();
    c.multi_without_loops = static_cast<std::size_t>(std::count_if(
        g.multi.begin(), g.multi.end(), [](const MultiEdge& e) { return e.source != e.target; }));
    c.directed_with_loops = g.directed.size();
    c.directed_without_loops = g.directed.size() - g.directed.loop_count();
    c.undirected_with_loops = g.undirected.size();
    c.undirected_without_loops = g.undirected.size() - g.undirected.loop_count();
    out.push_back(c);
  }
  return out;
}

void write_edges_multi(const InducedGraph& g, std::ostream& out) {
  std::vector<MultiEdge> sorted = g.multi;
  std::sort(sorted.begin(), sorted.end(), [](const MultiEdge& x, const MultiEdge& y) {
    return std::tie(x.source, x.target, x.assertion) < std::tie(y.source, y.target, y.assertion);
  });
  for (const auto& e : sorted) out << e.source << ' ' << e.target << ' ' << e.assertion << '\n';
}

void write_edges_collapsed(const CollapsedEdges& e, std::ostream& out) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto labels = e.labels_of(i);
    out << e.pairs[i].first << ' ' << e.pairs[i].second << ' ' << labels.size();
    for (Index a : labels) out << ' ' << a;
    out << '\n';
  }
}

}  // namespace cn4
