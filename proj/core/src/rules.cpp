#include "cn4/rules.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4 {

namespace {

using Triple = std::tuple<Index, Index, Index>;

std::vector<Triple> present(const ClosedKB& kb, bool positive_polarity) {
  std::vector<Triple> t;
  for (const auto& a : kb.assertions) {
    if (a.score <= 0) continue;
    if (positive_polarity && kb.frequencies[a.frequency].value <= 0) continue;
    t.emplace_back(a.concept1, a.relation, a.concept2);
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

}  // namespace

double RuleStats::ratio() const {
  if (support == 0) throw UndefinedError("success rate of a rule with empty support");
  return static_cast<double>(successes) / static_cast<double>(support);
}

FactIndex::FactIndex(const ClosedKB& kb, bool conclusion_positive_polarity)
    : relations_(kb.relations.size()), concepts_(kb.concepts.size()) {
  auto facts = present(kb, false);
  in_.resize(relations_);
  out_.resize(relations_);
  for (std::size_t r = 0; r < relations_; ++r) {
    in_[r].offsets.assign(concepts_ + 1, 0);
    out_[r].offsets.assign(concepts_ + 1, 0);
  }
  for (auto [a, r, c] : facts) {
    ++out_[r].offsets[a + 1];
    ++in_[r].offsets[c + 1];
  }
  for (std::size_t r = 0; r < relations_; ++r)
    for (auto* l : {&in_[r], &out_[r]}) {
      for (std::size_t i = 0; i < concepts_; ++i) l->offsets[i + 1] += l->offsets[i];
      l->items.resize(l->offsets.back());
    }
  std::vector<std::vector<std::size_t>> fill_in(relations_), fill_out(relations_);
  for (std::size_t r = 0; r < relations_; ++r) {
    fill_in[r].assign(in_[r].offsets.begin(), in_[r].offsets.end() - 1);
    fill_out[r].assign(out_[r].offsets.begin(), out_[r].offsets.end() - 1);
  }
  // facts are sorted by (a, r, c), so out lists come out sorted by c.
  for (auto [a, r, c] : facts) out_[r].items[fill_out[r][a]++] = c;
  // For in lists, the sources must be ascending as well; walking facts in
  // a-major order gives exactly that.
  for (auto [a, r, c] : facts) in_[r].items[fill_in[r][c]++] = a;

  auto conclusions = conclusion_positive_polarity ? present(kb, true) : facts;
  std::vector<Triple> by_pair;
  by_pair.reserve(conclusions.size());
  for (auto [a, r, c] : conclusions) by_pair.emplace_back(a, c, r);
  std::sort(by_pair.begin(), by_pair.end());
  pair_offsets_.push_back(0);
  for (std::size_t i = 0; i < by_pair.size(); ++i) {
    auto [a, c, r] = by_pair[i];
    if (i == 0 || std::get<0>(by_pair[i - 1]) != a || std::get<1>(by_pair[i - 1]) != c) {
      if (i != 0) pair_offsets_.push_back(pair_relations_.size());
      pairs_.emplace_back(a, c);
    }
    pair_relations_.push_back(r);
  }
  if (!pairs_.empty()) pair_offsets_.push_back(pair_relations_.size());
}

std::span<const Index> FactIndex::sources(Index r, Index b) const {
  const auto& l = in_[r];
  return {l.items.data() + l.offsets[b], l.items.data() + l.offsets[b + 1]};
}

std::span<const Index> FactIndex::targets(Index r, Index b) const {
  const auto& l = out_[r];
  return {l.items.data() + l.offsets[b], l.items.data() + l.offsets[b + 1]};
}

std::span<const Index> FactIndex::conclusions(Index a, Index c) const {
  auto key = std::make_pair(a, c);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key);
  if (it == pairs_.end() || *it != key) return {};
  std::size_t i = static_cast<std::size_t>(it - pairs_.begin());
  return {pair_relations_.data() + pair_offsets_[i],
          pair_relations_.data() + pair_offsets_[i + 1]};
}

bool FactIndex::has_conclusion(Index a, Index z, Index c) const {
  auto zs = conclusions(a, c);
  return std::binary_search(zs.begin(), zs.end(), z);
}

std::vector<Index> eligible_relations(const ClosedKB& kb, std::size_t min_count) {
  std::vector<std::size_t> count(kb.relations.size(), 0);
  for (const auto& a : kb.assertions)
    if (a.score > 0) ++count[a.relation];
  std::vector<Index> out;
  for (std::size_t r = 0; r < count.size(); ++r)
    if (count[r] >= min_count) out.push_back(static_cast<Index>(r));
  return out;
}

static void check_relation(const FactIndex& facts, Index r) {
  if (r < 0 || static_cast<std::size_t>(r) >= facts.relation_count())
    throw ParameterError("relation index out of range: " + std::to_string(r));
}

RuleStats rule_stats(const FactIndex& facts, const Rule& rule, const WitnessFn& witness) {
  for (Index r : {rule.x, rule.y, rule.z}) check_relation(facts, r);
  RuleStats s{rule};
  for (Index b = 0; b < static_cast<Index>(facts.concept_count()); ++b) {
    auto as = facts.sources(rule.x, b);
    auto cs = facts.targets(rule.y, b);
    if (as.empty() || cs.empty()) continue;
    s.support += as.size() * cs.size();
    for (Index a : as)
      for (Index c : cs) {
        bool ok = facts.has_conclusion(a, rule.z, c);
        if (ok) ++s.successes;
        if (witness) witness(a, b, c, ok);
      }
  }
  return s;
}

RuleStats rule_stats(const ClosedKB& kb, const Rule& rule, const WitnessFn& witness) {
  return rule_stats(FactIndex(kb), rule, witness);
}

std::vector<RuleStats> mine_frequent(const ClosedKB& kb, const MineOptions& options,
                                     unsigned threads) {
  if (options.min_ratio < 0 || options.min_ratio > 1)
    throw ParameterError("min ratio must lie in [0, 1]");
  FactIndex facts(kb, options.conclusion_positive_polarity);
  auto eligible = eligible_relations(kb, options.min_relation_count);
  std::size_t e = eligible.size();

  // One join per premiss pair feeds every conclusion.
  std::vector<std::vector<RuleStats>> found(e * e);
  parallel_for(e * e, threads, [&](std::size_t job, unsigned) {
    Index x = eligible[job / e], y = eligible[job % e];
    std::uint64_t support = 0;
    std::vector<std::uint64_t> successes(facts.relation_count(), 0);
    for (Index b = 0; b < static_cast<Index>(facts.concept_count()); ++b) {
      auto as = facts.sources(x, b);
      auto cs = facts.targets(y, b);
      if (as.empty() || cs.empty()) continue;
      support += as.size() * cs.size();
      for (Index a : as)
        for (Index c : cs)
          for (Index z : facts.conclusions(a, c)) ++successes[z];
    }
    if (support == 0 || support < options.min_support) return;
    for (Index z : eligible) {
      RuleStats s{{x, y, z}, support, successes[z]};
      if (s.ratio() >= options.min_ratio) found[job].push_back(s);
    }
  });
  std::vector<RuleStats> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

Index relation_by_name(const ClosedKB& kb, std::string_view name) {
  for (std::size_t r = 0; r < kb.relations.size(); ++r)
    if (kb.relations[r].name == name) return static_cast<Index>(r);
  throw ParameterError("unknown relation: " + std::string(name));
}

}  // namespace cn4
