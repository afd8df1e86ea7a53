#include "analyses.hpp"

#include <algorithm>

#include "cn4/cliques.hpp"
#include "cn4/clustering.hpp"
#include "cn4/components.hpp"
#include "cn4/degree.hpp"
#include "cn4/derived_io.hpp"
#include "cn4/error.hpp"
#include "cn4/paths.hpp"
#include "cn4/percolation.hpp"

namespace cn4::cli {

namespace {

Tsv& key_value(Tsv& t, std::string_view key, std::uint64_t v) { return t.cell(key).num(v).end(); }

std::string spec_line(const GraphSpec& spec) { return spec.label(); }

// "NA" when the quantity is undefined for this graph.
template <class Fn>
void optional_real(Tsv& t, std::string_view key, Fn&& fn, int digits = 6) {
  t.cell(key);
  try {
    t.real(fn(), digits);
  } catch (const UndefinedError&) {
    t.cell("NA");
  }
  t.end();
}

std::string_view kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::multi: return "multi";
    case GraphKind::directed: return "directed";
    case GraphKind::undirected: return "undirected";
  }
  return "?";
}

constexpr GraphKind kKinds[] = {GraphKind::multi, GraphKind::directed, GraphKind::undirected};
constexpr Polarity kPolarities[] = {Polarity::negative, Polarity::positive, Polarity::both};

GraphSpec with_polarity(Polarity p, Loops loops = Loops::keep) {
  GraphSpec s;
  s.polarity = p;
  s.loops = loops;
  return s;
}

template <std::size_t N>
std::string indicator_tsv(const std::array<std::size_t, N>& counts) {
  Tsv t;
  t.header({"indicator", "assertions"});
  for (std::size_t i = 0; i < N; ++i) t.num(i).num(counts[i]).end();
  return t.str();
}

}  // namespace

void add_validation(const RawTables& tables, const IdRegistry& registry, Bundle& b) {
  Tsv counts;
  counts.header({"table", "rows", "max_id"});
  for (Table t : kAllTables)
    counts.cell(table_name(t)).num(tables.size(t)).num(registry.max_id(t)).end();
  b.add("validate_counts.tsv", counts.str());

  Tsv refs;
  refs.header({"table", "column", "target", "valid", "null", "undefined"});
  for (const auto& r : summarize_references(tables, registry))
    refs.cell(table_name(r.from)).cell(r.field).cell(table_name(r.to)).num(r.valid).num(r.null)
        .num(r.undefined).end();
  b.add("validate_references.tsv", refs.str());
}

void add_closure(const Source& s, Bundle& b) {
  const ClosedKB& kb = s.kb;
  Tsv summary;
  summary.header({"quantity", "value"});
  key_value(summary, "english_assertions", kb.assertions.size());
  key_value(summary, "input_concepts", kb.input_concept_count);
  for (Table t : kAllTables)
    key_value(summary, std::string("closure_") + std::string(table_name(t)), kb.size(t));
  if (s.stats) {
    key_value(summary, "passes", static_cast<std::uint64_t>(s.stats->passes));
    key_value(summary, "undefined_best_raw", s.stats->undefined_best_raw);
    key_value(summary, "raised_concepts", s.stats->raised_concepts);
    key_value(summary, "raised_surfaceforms", s.stats->raised_surfaceforms);
    key_value(summary, "zero_frequency_assertions", s.stats->zero_frequency_assertions);

    std::size_t sweeps = 0;
    for (const auto& a : s.stats->added) sweeps = std::max(sweeps, a.size());
    Tsv passes;
    passes.cell("table");
    for (std::size_t k = 0; k < sweeps; ++k) passes.cell("pass_" + std::to_string(k + 2));
    passes.cell("total").end();
    for (Table t : kAllTables) {
      const auto& added = s.stats->added[table_slot(t)];
      passes.cell(table_name(t));
      for (std::size_t k = 0; k < sweeps; ++k) passes.num(k < added.size() ? added[k] : 0);
      passes.num(kb.size(t)).end();
    }
    b.add("closure_passes.tsv", passes.str());
  }
  b.add("closure_summary.tsv", summary.str());

  auto ind = summarize_indicators(kb);
  b.add("table_frame_indicator.tsv", indicator_tsv(ind.frame));
  b.add("table_surface_indicator.tsv", indicator_tsv(ind.surface));
  b.add("table_raw_indicator.tsv", indicator_tsv(ind.raw));
  b.add("table_score_indicator.tsv", indicator_tsv(ind.score));
  b.add("table_half_discrepancy.tsv", histogram_tsv(ind.half_discrepancy, "h", "assertions"));

  Tsv contra;
  contra.header({"concept1", "relation", "concept2", "affirming_id", "negating_id"});
  for (const auto& c : detect_contradictions(kb))
    contra.field(kb.concepts[c.concept1].text).field(kb.relations[c.relation].name)
        .field(kb.concepts[c.concept2].text).num(kb.assertions[c.affirming].id)
        .num(kb.assertions[c.negating].id).end();
  b.add("contradictions.tsv", contra.str());
}

void add_derived(const ClosedKB& kb, Bundle& b) {
  for (auto& [path, content] : render_derived_files(kb)) b.add(path, std::move(content));
}

void add_edge_tables(const ClosedKB& kb, Bundle& b) {
  Tsv cells;
  cells.header({"score", "loops", "polarity", "multi_edges", "directed_edges", "undirected_edges",
                "isolated"});
  for (ScoreFilter score : {ScoreFilter::all, ScoreFilter::positive})
    for (Loops loops : {Loops::keep, Loops::drop})
      for (Polarity p : kPolarities) {
        GraphSpec spec = with_polarity(p, loops);
        spec.score = score;
        auto c = edge_counts(induce(kb, spec));
        cells.cell(to_string(score)).cell(to_string(loops)).cell(to_string(p)).num(c.multi)
            .num(c.directed).num(c.undirected).num(c.isolated).end();
      }
  b.add("table_edges.tsv", cells.str());

  for (ScoreFilter score : {ScoreFilter::all, ScoreFilter::positive}) {
    Tsv rel;
    rel.header({"relation", "edges_negative", "edges_positive", "edges_total", "loops_negative",
                "loops_positive", "loops_total"});
    for (const auto& r : decompose_by_relation(kb, score))
      rel.field(kb.relations[r.relation].name).num(r.edges.negative).num(r.edges.positive)
          .num(r.edges.total()).num(r.loops.negative).num(r.loops.positive).num(r.loops.total())
          .end();
    b.add("table_relations_" + std::string(to_string(score)) + ".tsv", rel.str());
  }

  auto ranges = default_frequency_ranges();
  Tsv fr;
  fr.header({"freq_lo", "freq_hi", "multi_loops", "multi_no_loops", "directed_loops",
             "directed_no_loops", "undirected_loops", "undirected_no_loops"});
  for (const auto& r : edges_by_frequency_range(kb, ranges))
    fr.num(r.range.lo).num(r.range.hi).num(r.multi_with_loops).num(r.multi_without_loops)
        .num(r.directed_with_loops).num(r.directed_without_loops).num(r.undirected_with_loops)
        .num(r.undirected_without_loops).end();
  b.add("table_frequency_ranges.tsv", fr.str());
}

void add_graph_summary(const ClosedKB& kb, const GraphSpec& spec, Bundle& b,
                       const std::string& prefix) {
  auto g = induce(kb, spec);
  auto c = edge_counts(g);
  Tsv t;
  t.header({"quantity", "value"});
  t.cell("spec").cell(spec_line(spec)).end();
  key_value(t, "vertices", g.vertex_count);
  key_value(t, "multi_edges", c.multi);
  key_value(t, "directed_edges", c.directed);
  key_value(t, "undirected_edges", c.undirected);
  key_value(t, "isolated", c.isolated);
  key_value(t, "loops", g.directed.loop_count());
  b.add(prefix + "graph_summary.tsv", t.str());
}

void add_degree_stats(const ClosedKB& kb, const GraphSpec& spec, std::size_t top, unsigned threads,
                      Bundle& b, const std::string& prefix) {
  auto g = induce(kb, spec);
  Tsv summary;
  summary.header({"kind", "edges", "avg_degree", "avg_degree_nonisolated"});
  Tsv ranked;
  ranked.header({"kind", "direction", "rank", "concept_index", "concept", "degree"});
  for (GraphKind kind : kKinds) {
    summary.cell(kind_name(kind)).num(edge_count(g, kind));
    for (bool excl : {false, true}) {
      try {
        summary.real(average_degree(g, kind, excl));
      } catch (const UndefinedError&) {
        summary.cell("NA");
      }
    }
    summary.end();

    auto d = degree_stats(g, kind);
    std::vector<std::pair<std::string, const std::vector<std::uint64_t>*>> cols;
    if (kind != GraphKind::undirected) {
      cols.emplace_back("in", &d.in);
      cols.emplace_back("out", &d.out);
    }
    cols.emplace_back("total", &d.total);
    for (const auto& [dir, values] : cols) {
      std::string name = std::string(kind_name(kind)) + "_" + dir;
      b.add(prefix + "degree_histogram_" + name + ".tsv",
            histogram_tsv(histogram(*values), "degree", "vertices"));
      std::size_t rank = 0;
      for (const auto& r : top_k(*values, top))
        ranked.cell(kind_name(kind)).cell(dir).num(++rank).num(r.vertex)
            .field(kb.concepts[r.vertex].text).num(r.degree).end();
    }
  }
  b.add(prefix + "degree_summary.tsv", summary.str());
  b.add(prefix + "degree_top.tsv", ranked.str());

  auto adj = undirected_adjacency(g);
  Tsv cl;
  cl.header({"quantity", "value"});
  optional_real(cl, "transitivity", [&] { return transitivity_global(adj, threads); });
  optional_real(cl, "avg_clustering_skip_low_degree",
                [&] { return clustering_avg(adj, ClusteringMode::nan, threads); });
  optional_real(cl, "avg_clustering_zero_low_degree",
                [&] { return clustering_avg(adj, ClusteringMode::zero, threads); });
  b.add(prefix + "clustering.tsv", cl.str());
}

void add_components(const ClosedKB& kb, const GraphSpec& spec, Bundle& b,
                    const std::string& prefix) {
  auto g = induce(kb, spec);
  auto wcc = weak_components(undirected_adjacency(g));
  auto scc = strong_components(out_adjacency(g));
  Tsv t;
  t.header({"quantity", "value"});
  key_value(t, "vertices", g.vertex_count);
  key_value(t, "weak_components", wcc.count());
  key_value(t, "largest_weak", wcc.largest());
  key_value(t, "strong_components", scc.count());
  key_value(t, "largest_strong", scc.largest());
  b.add(prefix + "components_summary.tsv", t.str());
  b.add(prefix + "components_weak_sizes.tsv",
        histogram_tsv(size_distribution(wcc), "size", "components"));
  b.add(prefix + "components_strong_sizes.tsv",
        histogram_tsv(size_distribution(scc), "size", "components"));
}

void add_cores(const ClosedKB& kb, const GraphSpec& spec, CoreView view, Bundle& b,
               const std::string& prefix) {
  auto f = core_filtration(induce(kb, spec), view);
  b.add(prefix + "cores_distribution.tsv", histogram_tsv(f.distribution, "coreness", "vertices"));
  Tsv t;
  t.header({"coreness_at_least", "vertices", "multi_edges", "multi_avg_degree", "directed_edges",
            "directed_avg_degree", "undirected_edges", "undirected_avg_degree"});
  for (const auto& l : f.levels)
    t.num(l.k).num(l.vertices).num(l.multi_edges).real(l.multi_avg_degree)
        .num(l.directed_edges).real(l.directed_avg_degree).num(l.undirected_edges)
        .real(l.undirected_avg_degree).end();
  b.add(prefix + "cores_levels.tsv", t.str());
}

void add_paths(const ClosedKB& kb, const GraphSpec& spec, unsigned threads, Bundle& b,
               const std::string& prefix) {
  auto g = induce(kb, spec);
  Tsv summary;
  summary.header({"kind", "pairs", "reachable", "unreachable", "average_length", "longest",
                  "witness"});
  for (bool directed : {true, false}) {
    auto adj = directed ? out_adjacency(g) : undirected_adjacency(g);
    auto p = all_pairs_paths(adj, directed, threads);
    std::string kind = directed ? "directed" : "undirected";
    b.add(prefix + "paths_" + kind + ".tsv", histogram_tsv(p.histogram.lengths, "length", "pairs"));
    std::uint64_t total = p.histogram.total_pairs();
    summary.cell(kind).num(total).num(total - p.histogram.unreachable)
        .num(p.histogram.unreachable);
    try {
      summary.real(average_path_length(p.histogram));
    } catch (const UndefinedError&) {
      summary.cell("NA");
    }
    std::string witness;
    for (std::size_t i = 0; i < p.longest.path.size(); ++i)
      witness += (i ? " > " : "") + kb.concepts[p.longest.path[i]].text;
    summary.num(p.longest.length).field(witness).end();
  }
  b.add(prefix + "paths_summary.tsv", summary.str());
}

namespace {

void fit_row(Tsv& t, const PowerLawFit& f) {
  t.num(f.n).num(f.tail_n).num(f.xmin).real(f.alpha, 5).real(f.ks).real(f.p_value, 2)
      .num(f.bootstrap_n).real(f.log_likelihood, 3).real(f.moments.mean).real(f.moments.variance)
      .real(f.moments.std_dev).real(f.moments.skewness).real(f.moments.kurtosis);
}

void fit_header(Tsv& t) {
  t.header({"n", "tail_n", "xmin", "alpha", "ks", "p_value", "bootstrap", "log_lik", "mean",
            "variance", "std_dev", "skewness", "excess_kurtosis"});
}

}  // namespace

void add_fit(const ClosedKB& kb, const GraphSpec& spec, const FitOptions& fit, Bundle& b,
             const std::string& prefix) {
  auto sample = degree_sample(induce(kb, spec));
  Tsv t;
  fit_header(t);
  fit_row(t, powerlaw_fit(sample, fit));
  t.end();
  b.add(prefix + "powerlaw_fit.tsv", t.str());
}

void add_powerlaw_table(const ClosedKB& kb, const FitOptions& fit, Bundle& b) {
  Tsv t;
  t.cell("polarity");
  fit_header(t);
  for (Polarity p : kPolarities) {
    t.cell(to_string(p));
    try {
      fit_row(t, powerlaw_fit(degree_sample(induce(kb, with_polarity(p))), fit));
    } catch (const FitError&) {
      t.cell("NA");
    }
    t.end();
  }
  b.add("table_powerlaw.tsv", t.str());
}

void add_cliques(const ClosedKB& kb, const GraphSpec& spec, unsigned threads, Bundle& b,
                 const std::string& prefix) {
  auto adj = undirected_adjacency(induce(kb, spec));
  auto set = maximal_cliques(adj, 3, threads);
  std::size_t largest = 0;
  for (const auto& c : set.cliques) largest = std::max(largest, c.size());
  Tsv s;
  s.header({"quantity", "value"});
  key_value(s, "maximal_cliques_size_3_plus", set.cliques.size());
  key_value(s, "largest_size", largest);
  b.add(prefix + "cliques_summary.tsv", s.str());
  b.add(prefix + "cliques_distribution.tsv",
        histogram_tsv(set.size_distribution(3), "size", "cliques"));
  Tsv big;
  big.header({"clique", "concept_index", "concept"});
  std::size_t id = 0;
  for (const auto& c : set.cliques) {
    if (c.size() != largest) continue;
    for (Vertex v : c) big.num(id).num(v).field(kb.concepts[v].text).end();
    ++id;
  }
  b.add(prefix + "cliques_largest.tsv", big.str());
}

void add_clique_table(const ClosedKB& kb, unsigned threads, Bundle& b) {
  Tsv t;
  t.header({"freq_lo", "freq_hi", "maximal_cliques", "size", "count"});
  for (const auto& range : default_frequency_ranges()) {
    GraphSpec spec;
    spec.frequency = range;
    auto set = maximal_cliques(undirected_adjacency(induce(kb, spec)), 3, threads);
    auto dist = set.size_distribution(3);
    if (dist.empty()) t.num(range.lo).num(range.hi).num(0u).cell("-").cell("-").end();
    for (auto [size, count] : dist)
      t.num(range.lo).num(range.hi).num(set.cliques.size()).num(size).num(count).end();
  }
  b.add("table_cliques.tsv", t.str());
}

namespace {

void percolation_files(const ClosedKB& kb, const Cover& cover, const std::vector<char>& mask,
                       std::size_t k, Bundle& b, const std::string& prefix) {
  std::string tag = "k" + std::to_string(k);
  b.add(prefix + "percolation_" + tag + "_sizes.tsv",
        histogram_tsv(cover.size_distribution(), "size", "communities"));
  b.add(prefix + "percolation_" + tag + "_membership.tsv",
        histogram_tsv(cover.membership_distribution(mask), "communities", "concepts"));
  Tsv cv;
  cv.header({"community_id", "concept_index", "concept"});
  for (std::size_t c = 0; c < cover.communities.size(); ++c)
    for (Vertex v : cover.communities[c]) cv.num(c).num(v).field(kb.concepts[v].text).end();
  b.add(prefix + "percolation_" + tag + "_cover.tsv", cv.str());
}

std::vector<char> non_isolated(const Adjacency& g) {
  std::vector<char> m(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) m[v] = g.degree(v) > 0;
  return m;
}

}  // namespace

void add_percolation(const ClosedKB& kb, const GraphSpec& spec, std::size_t k, unsigned threads,
                     Bundle& b, const std::string& prefix) {
  auto adj = undirected_adjacency(induce(kb, spec));
  auto cover = k_clique_percolation(adj, k, threads);
  Tsv s;
  s.header({"k", "communities"});
  s.num(k).num(cover.communities.size()).end();
  b.add(prefix + "percolation_summary.tsv", s.str());
  percolation_files(kb, cover, non_isolated(adj), k, b, prefix);
}

void add_percolation_table(const ClosedKB& kb, unsigned threads, Bundle& b) {
  GraphSpec spec = with_polarity(Polarity::negative, Loops::drop);
  auto adj = undirected_adjacency(induce(kb, spec));
  auto cliques = maximal_cliques(adj, 3, threads);
  auto mask = non_isolated(adj);
  Tsv s;
  s.header({"k", "communities"});
  for (std::size_t k : {3u, 4u}) {
    auto cover = k_clique_percolation(cliques, adj.vertex_count(), k);
    s.num(k).num(cover.communities.size()).end();
    percolation_files(kb, cover, mask, k, b, "table_");
  }
  b.add("table_percolation.tsv", s.str());
}

void add_communities(const ClosedKB& kb, const GraphSpec& spec, const CommunityOptions& o,
                     Bundle& b, const std::string& prefix) {
  auto adj = undirected_adjacency(induce(kb, spec));
  auto core = coreness(adj);
  std::uint32_t top = core.empty() ? 0 : *std::max_element(core.begin(), core.end());
  std::string algo(to_string(o.algo));
  Tsv t;
  t.header({"coreness_at_least", "vertices", "edges", "components", "kappa_avg", "kappa_min",
            "kappa_max", "mu_avg", "mu_min", "mu_max", "runs", "runs_matching_components"});
  for (std::uint32_t k = top; k >= 1; --k) {
    std::vector<char> keep(core.size());
    for (std::size_t v = 0; v < core.size(); ++v) keep[v] = core[v] >= k;
    auto sub = compact_subgraph(adj, keep).graph;
    auto s = run_stats(o.algo, sub, o.runs, o.seed, o.threads);
    t.num(k).num(sub.vertex_count()).num(sub.arc_count() / 2)
        .num(weak_components(sub).count()).real(s.kappa_avg, 2).num(s.kappa_min).num(s.kappa_max)
        .real(s.mu_avg).real(s.mu_min).real(s.mu_max).num(s.runs).num(s.agreeing).end();
  }
  b.add(prefix + "communities_cores_" + algo + ".tsv", t.str());

  Rng rng(o.seed, 0);
  auto p = run_once(o.algo, adj, rng);
  Tsv part;
  part.header({"community_id", "concept_index"});
  for (std::size_t v = 0; v < p.community.size(); ++v) part.num(p.community[v]).num(v).end();
  b.add(prefix + "communities_partition_" + algo + ".tsv", part.str());
  Tsv q;
  q.header({"quantity", "value"});
  key_value(q, "communities", p.count);
  optional_real(q, "modularity", [&] { return modularity(adj, p); });
  b.add(prefix + "communities_summary_" + algo + ".tsv", q.str());
}

void add_rules(const ClosedKB& kb, const MineOptions& o, unsigned threads, Bundle& b,
               const std::string& prefix) {
  Tsv el;
  el.header({"relation", "positive_score_assertions"});
  std::vector<std::size_t> count(kb.relations.size(), 0);
  for (const auto& a : kb.assertions)
    if (a.score > 0) ++count[a.relation];
  for (Index r : eligible_relations(kb, o.min_relation_count))
    el.field(kb.relations[r].name).num(count[r]).end();
  b.add(prefix + "rules_eligible_relations.tsv", el.str());

  Tsv t;
  t.header({"x", "y", "z", "ratio", "successes", "support"});
  for (const auto& s : mine_frequent(kb, o, threads))
    t.field(kb.relations[s.rule.x].name).field(kb.relations[s.rule.y].name)
        .field(kb.relations[s.rule.z].name).real(s.ratio()).num(s.successes).num(s.support).end();
  b.add(prefix + "rules_frequent.tsv", t.str());
}

void add_rule(const ClosedKB& kb, const Rule& rule, bool conclusion_positive_polarity,
              bool witnesses, Bundle& b, const std::string& prefix) {
  FactIndex facts(kb, conclusion_positive_polarity);
  Tsv w;
  w.header({"a", "b", "c", "success"});
  WitnessFn fn;
  if (witnesses)
    fn = [&](Index a, Index mid, Index c, bool ok) {
      w.field(kb.concepts[a].text).field(kb.concepts[mid].text).field(kb.concepts[c].text)
          .num(ok ? 1 : 0).end();
    };
  auto s = rule_stats(facts, rule, fn);
  Tsv t;
  t.header({"x", "y", "z", "ratio", "successes", "support"});
  t.field(kb.relations[rule.x].name).field(kb.relations[rule.y].name)
      .field(kb.relations[rule.z].name);
  if (s.support)
    t.real(s.ratio());
  else
    t.cell("NA");
  t.num(s.successes).num(s.support).end();
  b.add(prefix + "rule_stats.tsv", t.str());
  if (witnesses) b.add(prefix + "rule_witnesses.tsv", w.str());
}

}  // namespace cn4::cli
