#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cn4/closure.hpp"
#include "cn4/communities.hpp"
#include "cn4/cores.hpp"
#include "cn4/graph.hpp"
#include "cn4/ingest.hpp"
#include "cn4/powerlaw.hpp"
#include "cn4/rules.hpp"
#include "report.hpp"

namespace cn4::cli {

struct Source {
  ClosedKB kb;
  std::optional<ClosureStats> stats;  // only when built from a dump
};

// Every artifact writer appends to `b`; `prefix` is prepended to file names.

void add_validation(const RawTables& tables, const IdRegistry& registry, Bundle& b);
void add_closure(const Source& s, Bundle& b);
void add_derived(const ClosedKB& kb, Bundle& b);

void add_edge_tables(const ClosedKB& kb, Bundle& b);
void add_graph_summary(const ClosedKB& kb, const GraphSpec& spec, Bundle& b,
                       const std::string& prefix = "");
void add_degree_stats(const ClosedKB& kb, const GraphSpec& spec, std::size_t top, unsigned threads,
                      Bundle& b, const std::string& prefix = "");
void add_components(const ClosedKB& kb, const GraphSpec& spec, Bundle& b,
                    const std::string& prefix = "");
void add_cores(const ClosedKB& kb, const GraphSpec& spec, CoreView view, Bundle& b,
               const std::string& prefix = "");
void add_paths(const ClosedKB& kb, const GraphSpec& spec, unsigned threads, Bundle& b,
               const std::string& prefix = "");
void add_fit(const ClosedKB& kb, const GraphSpec& spec, const FitOptions& fit, Bundle& b,
             const std::string& prefix = "");
void add_cliques(const ClosedKB& kb, const GraphSpec& spec, unsigned threads, Bundle& b,
                 const std::string& prefix = "");
void add_percolation(const ClosedKB& kb, const GraphSpec& spec, std::size_t k, unsigned threads,
                     Bundle& b, const std::string& prefix = "");

struct CommunityOptions {
  CommunityAlgorithm algo = CommunityAlgorithm::multilevel;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Run statistics on the core subgraphs (coreness >= k, k = max .. 1) of the
// loop-free undirected graph, plus the first run's partition of the whole graph.
void add_communities(const ClosedKB& kb, const GraphSpec& spec, const CommunityOptions& o,
                     Bundle& b, const std::string& prefix = "");

void add_rules(const ClosedKB& kb, const MineOptions& o, unsigned threads, Bundle& b,
               const std::string& prefix = "");
// Stats of one rule; with `witnesses` every support triple is listed.
void add_rule(const ClosedKB& kb, const Rule& rule, bool conclusion_positive_polarity,
              bool witnesses, Bundle& b, const std::string& prefix = "");

// Reproduction-only tables that sweep over several graph specifications.
void add_powerlaw_table(const ClosedKB& kb, const FitOptions& fit, Bundle& b);
void add_clique_table(const ClosedKB& kb, unsigned threads, Bundle& b);
void add_percolation_table(const ClosedKB& kb, unsigned threads, Bundle& b);

}  // namespace cn4::cli
