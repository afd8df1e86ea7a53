#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "cn4/closure.hpp"

namespace cn4 {

struct Rule {
  Index x = 0;  // premisses
  Index y = 0;
  Index z = 0;  // conclusion
  auto operator<=>(const Rule&) const = default;
};

struct RuleStats {
  Rule rule;
  std::uint64_t support = 0;
  std::uint64_t successes = 0;

  // Throws UndefinedError for an empty support.
  double ratio() const;
  bool operator==(const RuleStats&) const = default;
};

// Which (concept, relation, concept) facts are present. Premisses use every
// positive-score assertion regardless of polarity; conclusions use the same
// set unless `conclusion_positive_polarity` also requires frequency > 0.
class FactIndex {
 public:
  explicit FactIndex(const ClosedKB& kb, bool conclusion_positive_polarity = false);

  std::size_t relation_count() const { return relations_; }
  std::size_t concept_count() const { return concepts_; }
  // Concepts a with (a, r, b) present, ascending.
  std::span<const Index> sources(Index r, Index b) const;
  // Concepts c with (b, r, c) present, ascending.
  std::span<const Index> targets(Index r, Index b) const;
  // Relations z with (a, z, c) present in the conclusion set, ascending.
  std::span<const Index> conclusions(Index a, Index c) const;
  bool has_conclusion(Index a, Index z, Index c) const;

 private:
  struct Lists {
    std::vector<std::size_t> offsets;  // by concept
    std::vector<Index> items;
  };
  std::size_t relations_ = 0;
  std::size_t concepts_ = 0;
  std::vector<Lists> in_, out_;  // by relation
  std::vector<std::pair<Index, Index>> pairs_;  // sorted (a, c)
  std::vector<std::size_t> pair_offsets_;
  std::vector<Index> pair_relations_;
};

// Relations with at least `min_count` positive-score assertions, ascending.
std::vector<Index> eligible_relations(const ClosedKB& kb, std::size_t min_count = 300);

// Called for each support triple in (b, a, c) order.
using WitnessFn = std::function<void(Index a, Index b, Index c, bool success)>;

RuleStats rule_stats(const FactIndex& facts, const Rule& rule, const WitnessFn& witness = {});
RuleStats rule_stats(const ClosedKB& kb, const Rule& rule, const WitnessFn& witness = {});

struct MineOptions {
  std::uint64_t min_support = 300;
  double min_ratio = 0.05;
  std::size_t min_relation_count = 300;
  bool conclusion_positive_polarity = false;
};

// Every rule over eligible relations with support >= min_support (and > 0)
// and ratio >= min_ratio, sorted by (x, y, z).
std::vector<RuleStats> mine_frequent(const ClosedKB& kb, const MineOptions& options = {},
                                     unsigned threads = 1);

// Relation index by name; throws ParameterError when absent.
Index relation_by_name(const ClosedKB& kb, std::string_view name);

}  // namespace cn4
