#include "cn4/closure.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4 {

Index IdMap::at(Id id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const auto& e, Id key) { return e.first < key; });
  if (it == entries.end() || it->first != id) return kNullIndex;
  return it->second;
}

std::size_t ClosedKB::size(Table t) const {
  switch (t) {
    case Table::assertion: return assertions.size();
    case Table::concept_: return concepts.size();
    case Table::relation: return relations.size();
    case Table::frequency: return frequencies.size();
    case Table::frame: return frames.size();
    case Table::surfaceform: return surfaceforms.size();
    case Table::rawassertion: return rawassertions.size();
    case Table::sentence: return sentences.size();
  }
  return 0;
}

Index ClosedKB::index_of(Table t, Id id) const { return maps[table_slot(t)].at(id); }

namespace {

constexpr int kNotIncluded = -1;

// Membership state for one table during the sweeps.
struct Slot {
  std::vector<int> tier;             // per source row: sweep it entered, or kNotIncluded
  std::vector<std::size_t> pending;  // source rows requested but not yet included
  std::vector<char> requested;
};

class Walker {
 public:
  Walker(const RawTables& tables, const IdRegistry& registry)
      : tables_(tables), registry_(registry) {
    for (Table t : kAllTables) {
      Slot& s = slots_[table_slot(t)];
      s.tier.assign(tables.size(t), kNotIncluded);
      s.requested.assign(tables.size(t), 0);
    }
  }

  ClosureStats run() {
    ClosureStats stats;
    stats.passes = 1;
    for (int sweep = 0;; ++sweep) {
      std::size_t total = 0;
      for (Table t : kAllTables) {
        std::size_t n = include(t, sweep);
        stats.added[table_slot(t)].push_back(n);
        total += n;
      }
      if (total == 0) {
        for (auto& a : stats.added) a.pop_back();
        break;
      }
      ++stats.passes;
    }
    stats.undefined_best_raw = undefined_best_raw_;
    return stats;
  }

  const Slot& slot(Table t) const { return slots_[table_slot(t)]; }

 private:
  void request(Table from, Id from_id, std::string_view field, Table to, OptId value,
               bool nullable) {
    Resolved r = resolve_reference(registry_, to, value);
    if (r.kind == Resolution::null) {
      if (nullable) return;
      throw IntegrityError(std::string(table_name(from)) + " " + std::to_string(from_id) + ": " +
                           std::string(field) + " is null");
    }
    if (r.kind == Resolution::undefined)
      throw IntegrityError(std::string(table_name(from)) + " " + std::to_string(from_id) + ": " +
                           std::string(field) + " " + std::to_string(r.id) + " not found in " +
                           std::string(table_name(to)));
    std::size_t row = *registry_.row_of(to, r.id);
    Slot& s = slots_[table_slot(to)];
    if (s.tier[row] != kNotIncluded || s.requested[row]) return;
    s.requested[row] = 1;
    s.pending.push_back(row);
  }

  std::size_t include(Table t, int sweep) {
    Slot& s = slots_[table_slot(t)];
    if (t == Table::assertion && sweep == 0) {
      for (std::size_t i = 0; i < tables_.assertions.size(); ++i)
        if (tables_.assertions[i].language_id == "en") s.pending.push_back(i);
    }
    std::vector<std::size_t> rows;
    rows.swap(s.pending);
    std::sort(rows.begin(), rows.end());
    for (std::size_t row : rows) {
      s.tier[row] = sweep;
      s.requested[row] = 0;
      follow(t, row);
    }
    return rows.size();
  }

  void follow(Table t, std::size_t row) {
    switch (t) {
      case Table::assertion: {
        const auto& a = tables_.assertions[row];
        request(t, a.id, "concept1_id", Table::concept_, a.concept1_id, false);
        request(t, a.id, "concept2_id", Table::concept_, a.concept2_id, false);
        request(t, a.id, "relation_id", Table::relation, a.relation_id, false);
        request(t, a.id, "frequency_id", Table::frequency, a.frequency_id, false);
        request(t, a.id, "best_surface1_id", Table::surfaceform, a.best_surface1_id, true);
        request(t, a.id, "best_surface2_id", Table::surfaceform, a.best_surface2_id, true);
        request(t, a.id, "best_frame_id", Table::frame, a.best_frame_id, true);
        if (resolve_reference(registry_, Table::rawassertion, a.best_raw_id).kind ==
            Resolution::undefined) {
          ++undefined_best_raw_;
        } else {
          request(t, a.id, "best_raw_id", Table::rawassertion, a.best_raw_id, true);
        }
        break;
      }
      case Table::frame: {
        const auto& f = tables_.frames[row];
        request(t, f.id, "relation_id", Table::relation, f.relation_id, false);
        request(t, f.id, "frequency_id", Table::frequency, f.frequency_id, false);
        break;
      }
      case Table::surfaceform: {
        const auto& sf = tables_.surfaceforms[row];
        request(t, sf.id, "concept_id", Table::concept_, sf.concept_id, false);
        break;
      }
      case Table::rawassertion: {
        const auto& r = tables_.rawassertions[row];
        request(t, r.id, "sentence_id", Table::sentence, r.sentence_id, false);
        request(t, r.id, "surface1_id", Table::surfaceform, r.surface1_id, true);
        request(t, r.id, "surface2_id", Table::surfaceform, r.surface2_id, true);
        request(t, r.id, "frame_id", Table::frame, r.frame_id, true);
        break;
      }
      case Table::concept_:
      case Table::relation:
      case Table::frequency:
      case Table::sentence:
        break;
    }
  }

  const RawTables& tables_;
  const IdRegistry& registry_;
  std::array<Slot, kTableCount> slots_;
  std::size_t undefined_best_raw_ = 0;
};

template <class Row>
std::vector<std::size_t> ordered_rows(const std::vector<Row>& rows, const Slot& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (s.tier[i] != kNotIncluded) out.push_back(i);
  std::sort(out.begin(), out.end(), [&](std::size_t x, std::size_t y) {
    return std::tie(s.tier[x], rows[x].id) < std::tie(s.tier[y], rows[y].id);
  });
  return out;
}

IdMap build_map(const IdRegistry& registry, Table t, const std::vector<Index>& index_of_row) {
  IdMap m;
  m.max_id = registry.max_id(t);
  auto entries = registry.entries(t);
  m.entries.reserve(entries.size());
  for (const auto& [id, row] : entries) {
    Index ix = index_of_row[row];
    m.entries.emplace_back(id, ix == kNotIncluded ? kUndefinedIndex : ix);
  }
  return m;
}

}  // namespace

ClosureResult compute_closure(const RawTables& tables, const IdRegistry& registry) {
  Walker walker(tables, registry);
  ClosureResult result;
  result.stats = walker.run();
  ClosedKB& kb = result.kb;

  std::array<std::vector<Index>, kTableCount> index_of_row;
  std::array<std::vector<std::size_t>, kTableCount> order;
  auto assign = [&](Table t, const auto& rows) {
    auto& o = order[table_slot(t)];
    o = ordered_rows(rows, walker.slot(t));
    auto& ix = index_of_row[table_slot(t)];
    ix.assign(rows.size(), kNotIncluded);
    for (std::size_t k = 0; k < o.size(); ++k) ix[o[k]] = static_cast<Index>(k);
    kb.maps[table_slot(t)] = build_map(registry, t, ix);
  };
  assign(Table::assertion, tables.assertions);
  assign(Table::concept_, tables.concepts);
  assign(Table::relation, tables.relations);
  assign(Table::frequency, tables.frequencies);
  assign(Table::frame, tables.frames);
  assign(Table::surfaceform, tables.surfaceforms);
  assign(Table::rawassertion, tables.rawassertions);
  assign(Table::sentence, tables.sentences);

  auto ref = [&](Table t, OptId id) -> Index {
    if (!id) return kNullIndex;
    auto row = registry.row_of(t, *id);
    if (!row) return kUndefinedIndex;
    Index ix = index_of_row[table_slot(t)][*row];
    return ix == kNotIncluded ? kUndefinedIndex : ix;
  };

  for (std::size_t row : order[table_slot(Table::assertion)]) {
    const auto& a = tables.assertions[row];
    ClosedAssertion c;
    c.id = a.id;
    c.concept1 = ref(Table::concept_, a.concept1_id);
    c.concept2 = ref(Table::concept_, a.concept2_id);
    c.relation = ref(Table::relation, a.relation_id);
    c.frequency = ref(Table::frequency, a.frequency_id);
    c.frame = ref(Table::frame, a.best_frame_id);
    c.surface1 = ref(Table::surfaceform, a.best_surface1_id);
    c.surface2 = ref(Table::surfaceform, a.best_surface2_id);
    c.raw = ref(Table::rawassertion, a.best_raw_id);
    c.score = a.score;
    kb.assertions.push_back(c);
  }
  for (std::size_t row : order[table_slot(Table::concept_)])
    kb.concepts.push_back({tables.concepts[row].id, tables.concepts[row].text});
  for (std::size_t row : order[table_slot(Table::relation)]) {
    const auto& r = tables.relations[row];
    kb.relations.push_back({r.id, r.name, r.description});
  }
  for (std::size_t row : order[table_slot(Table::frequency)]) {
    const auto& f = tables.frequencies[row];
    kb.frequencies.push_back({f.id, f.value, f.text});
  }
  for (std::size_t row : order[table_slot(Table::frame)]) {
    const auto& f = tables.frames[row];
    kb.frames.push_back(
        {f.id, ref(Table::relation, f.relation_id), ref(Table::frequency, f.frequency_id), f.text});
  }
  for (std::size_t row : order[table_slot(Table::surfaceform)]) {
    const auto& s = tables.surfaceforms[row];
    kb.surfaceforms.push_back({s.id, ref(Table::concept_, s.concept_id), s.text});
  }
  for (std::size_t row : order[table_slot(Table::rawassertion)]) {
    const auto& r = tables.rawassertions[row];
    ClosedRawAssertion c;
    c.id = r.id;
    c.sentence = ref(Table::sentence, r.sentence_id);
    c.assertion = ref(Table::assertion, r.assertion_id);
    c.surface1 = ref(Table::surfaceform, r.surface1_id);
    c.surface2 = ref(Table::surfaceform, r.surface2_id);
    c.frame = ref(Table::frame, r.frame_id);
    c.score = r.score;
    kb.rawassertions.push_back(c);
  }
  for (std::size_t row : order[table_slot(Table::sentence)]) {
    const auto& s = tables.sentences[row];
    kb.sentences.push_back({s.id, s.score, s.text});
  }

  const auto& concept_added = result.stats.added[table_slot(Table::concept_)];
  kb.input_concept_count = concept_added.empty() ? 0 : concept_added[0];
  result.stats.raised_concepts = kb.concepts.size() - kb.input_concept_count;
  const auto& surface_added = result.stats.added[table_slot(Table::surfaceform)];
  result.stats.raised_surfaceforms =
      kb.surfaceforms.size() - (surface_added.empty() ? 0 : surface_added[0]);
  for (const auto& a : kb.assertions)
    if (kb.frequencies[a.frequency].value == 0) ++result.stats.zero_frequency_assertions;

  verify_closed(kb);
  classify(kb);
  return result;
}

IndicatorContext IndicatorContext::build(const ClosedKB& kb) {
  IndicatorContext ctx;
  ctx.input_concept_count = kb.input_concept_count;
  ctx.best_surface.assign(kb.surfaceforms.size(), 0);
  for (const auto& a : kb.assertions) {
    if (a.surface1 >= 0) ctx.best_surface[a.surface1] = 1;
    if (a.surface2 >= 0) ctx.best_surface[a.surface2] = 1;
  }
  return ctx;
}

int frame_indicator(const ClosedKB& kb, const ClosedAssertion& a) {
  if (a.frame < 0) return 4;
  const ClosedFrame& f = kb.frames[a.frame];
  int rel = f.relation == a.relation ? 0 : 2;
  int freq = f.frequency == a.frequency ? 0 : 1;
  return rel + freq;
}

namespace {

int surface_code(const ClosedKB& kb, const IndicatorContext& ctx, Index surface, Index owner) {
  if (surface < 0) return 3;
  Index c = kb.surfaceforms[surface].concept_index;
  if (c == owner) return 0;
  return static_cast<std::size_t>(c) < ctx.input_concept_count ? 1 : 2;
}

int raw_surface_code(const IndicatorContext& ctx, Index raw_surface, Index best_surface) {
  if (raw_surface == best_surface) return 0;
  if (raw_surface >= 0 && ctx.best_surface[raw_surface]) return 1;
  return 2;
}

}  // namespace

int surface_indicator(const ClosedKB& kb, const IndicatorContext& ctx, const ClosedAssertion& a) {
  return 4 * surface_code(kb, ctx, a.surface1, a.concept1) +
         surface_code(kb, ctx, a.surface2, a.concept2);
}

int raw_indicator(const ClosedKB& kb, const IndicatorContext& ctx, Index self,
                  const ClosedAssertion& a) {
  if (a.raw == kNullIndex) return 36;
  if (a.raw == kUndefinedIndex) return 37;
  const ClosedRawAssertion& r = kb.rawassertions[a.raw];
  int back = r.assertion == self ? 0 : 1;
  int frame = r.frame == a.frame ? 0 : 1;
  return 18 * back + 9 * frame + 3 * raw_surface_code(ctx, r.surface1, a.surface1) +
         raw_surface_code(ctx, r.surface2, a.surface2);
}

std::int64_t discrepancy(const ScoreTriple& t) {
  auto abs = [](std::int64_t x) { return x < 0 ? -x : x; };
  return abs(t.s1 - t.s2) + abs(t.s2 - t.s3) + abs(t.s3 - t.s1);
}

std::int64_t half_discrepancy(const ScoreTriple& t) { return discrepancy(t) / 2; }

int score_indicator(const ScoreTriple& t, bool raw_present) {
  if (!raw_present) return 1;
  auto pos = [](std::int64_t x) { return x > 0; };
  if (t.s1 == t.s2 && t.s2 == t.s3) return 0;
  if (t.s1 == t.s2) return pos(t.s1) == pos(t.s3) ? 2 : 3;
  if (t.s1 == t.s3) return pos(t.s1) == pos(t.s2) ? 4 : 5;
  if (t.s2 == t.s3) return pos(t.s2) == pos(t.s1) ? 6 : 7;
  return pos(t.s1) == pos(t.s2) && pos(t.s2) == pos(t.s3) ? 8 : 9;
}

std::optional<ScoreTriple> score_triple(const ClosedKB& kb, const ClosedAssertion& a) {
  if (a.raw < 0) return std::nullopt;
  const ClosedRawAssertion& r = kb.rawassertions[a.raw];
  return ScoreTriple{a.score, r.score, kb.sentences[r.sentence].score};
}

void classify(ClosedKB& kb, unsigned threads) {
  IndicatorContext ctx = IndicatorContext::build(kb);
  parallel_for(
      kb.assertions.size(), threads,
      [&](std::size_t i, unsigned) {
        ClosedAssertion& a = kb.assertions[i];
        a.frame_indicator = frame_indicator(kb, a);
        a.surface_indicator = surface_indicator(kb, ctx, a);
        a.raw_indicator = raw_indicator(kb, ctx, static_cast<Index>(i), a);
        auto t = score_triple(kb, a);
        a.score_indicator = score_indicator(t.value_or(ScoreTriple{}), t.has_value());
      },
      4096);
}

IndicatorSummary summarize_indicators(const ClosedKB& kb) {
  IndicatorSummary s;
  for (const auto& a : kb.assertions) {
    ++s.frame.at(a.frame_indicator);
    ++s.surface.at(a.surface_indicator);
    ++s.raw.at(a.raw_indicator);
    ++s.score.at(a.score_indicator);
    auto t = score_triple(kb, a);
    ++s.half_discrepancy[t ? half_discrepancy(*t) : 0];
  }
  return s;
}

std::vector<Contradiction> detect_contradictions(const ClosedKB& kb) {
  struct Key {
    Index c1, c2, rel, assertion;
    std::int64_t value;
  };
  std::vector<Key> keys;
  for (std::size_t i = 0; i < kb.assertions.size(); ++i) {
    const auto& a = kb.assertions[i];
    if (a.score <= 0) continue;
    std::int64_t v = kb.frequencies[a.frequency].value;
    if (v == 0) continue;
    keys.push_back({a.concept1, a.concept2, a.relation, static_cast<Index>(i), v});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
    return std::tie(x.c1, x.c2, x.rel, x.assertion) < std::tie(y.c1, y.c2, y.rel, y.assertion);
  });
  std::vector<Contradiction> out;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    Index pos = -1, neg = -1;
    while (j < keys.size() && keys[j].c1 == keys[i].c1 && keys[j].c2 == keys[i].c2 &&
           keys[j].rel == keys[i].rel) {
      if (keys[j].value > 0 && pos < 0) pos = keys[j].assertion;
      if (keys[j].value < 0 && neg < 0) neg = keys[j].assertion;
      ++j;
    }
    if (pos >= 0 && neg >= 0) out.push_back({keys[i].c1, keys[i].c2, keys[i].rel, pos, neg});
    i = j;
  }
  return out;
}

void verify_closed(const ClosedKB& kb) {
  auto check = [](Index ix, std::size_t n, bool nullable, bool undefinable, const char* what,
                  Id owner) {
    bool ok = (ix >= 0 && static_cast<std::size_t>(ix) < n) || (nullable && ix == kNullIndex) ||
              (undefinable && ix == kUndefinedIndex);
    if (!ok)
      throw IntegrityError(std::string(what) + " of record " + std::to_string(owner) +
                           " is out of range: " + std::to_string(ix));
  };
  for (const auto& a : kb.assertions) {
    check(a.concept1, kb.input_concept_count, false, false, "assertion concept1", a.id);
    check(a.concept2, kb.input_concept_count, false, false, "assertion concept2", a.id);
    check(a.relation, kb.relations.size(), false, false, "assertion relation", a.id);
    check(a.frequency, kb.frequencies.size(), false, false, "assertion frequency", a.id);
    check(a.frame, kb.frames.size(), true, false, "assertion frame", a.id);
    check(a.surface1, kb.surfaceforms.size(), true, false, "assertion surface1", a.id);
    check(a.surface2, kb.surfaceforms.size(), true, false, "assertion surface2", a.id);
    check(a.raw, kb.rawassertions.size(), true, true, "assertion raw", a.id);
  }
  if (kb.input_concept_count > kb.concepts.size())
    throw IntegrityError("input concept count exceeds concept table");
  for (const auto& f : kb.frames) {
    check(f.relation, kb.relations.size(), false, false, "frame relation", f.id);
    check(f.frequency, kb.frequencies.size(), false, false, "frame frequency", f.id);
  }
  for (const auto& s : kb.surfaceforms)
    check(s.concept_index, kb.concepts.size(), false, false, "surface form concept", s.id);
  for (const auto& r : kb.rawassertions) {
    check(r.sentence, kb.sentences.size(), false, false, "raw assertion sentence", r.id);
    check(r.assertion, kb.assertions.size(), true, true, "raw assertion assertion", r.id);
    check(r.surface1, kb.surfaceforms.size(), true, false, "raw assertion surface1", r.id);
    check(r.surface2, kb.surfaceforms.size(), true, false, "raw assertion surface2", r.id);
    check(r.frame, kb.frames.size(), true, false, "raw assertion frame", r.id);
  }
}

}  // namespace cn4
