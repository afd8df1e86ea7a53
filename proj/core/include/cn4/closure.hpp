#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cn4/ingest.hpp"

namespace cn4 {

using Index = std::int64_t;

inline constexpr Index kNullIndex = -1;
inline constexpr Index kUndefinedIndex = -2;

struct ClosedAssertion {
  Id id = 0;
  Index concept1 = 0;
  Index concept2 = 0;
  Index relation = 0;
  Index frequency = 0;
  Index frame = kNullIndex;
  Index surface1 = kNullIndex;
  Index surface2 = kNullIndex;
  Index raw = kNullIndex;
  std::int64_t score = 0;
  int frame_indicator = 0;
  int surface_indicator = 0;
  int raw_indicator = 0;
  int score_indicator = 0;
  bool operator==(const ClosedAssertion&) const = default;
};

struct ClosedConcept {
  Id id = 0;
  std::string text;
  bool operator==(const ClosedConcept&) const = default;
};

struct ClosedRelation {
  Id id = 0;
  std::string name;
  std::string description;
  bool operator==(const ClosedRelation&) const = default;
};

struct ClosedFrequency {
  Id id = 0;
  std::int64_t value = 0;
  std::string text;
  bool operator==(const ClosedFrequency&) const = default;
};

struct ClosedFrame {
  Id id = 0;
  Index relation = 0;
  Index frequency = 0;
  std::string text;
  bool operator==(const ClosedFrame&) const = default;
};

struct ClosedSurfaceForm {
  Id id = 0;
  Index concept_index = 0;
  std::string text;
  bool operator==(const ClosedSurfaceForm&) const = default;
};

struct ClosedRawAssertion {
  Id id = 0;
  Index sentence = 0;
  // kUndefinedIndex when the raw assertion points at an assertion outside
  // the closure, kNullIndex when its assertion_id is empty.
  Index assertion = kNullIndex;
  Index surface1 = kNullIndex;
  Index surface2 = kNullIndex;
  Index frame = kNullIndex;
  std::int64_t score = 0;
  bool operator==(const ClosedRawAssertion&) const = default;
};

struct ClosedSentence {
  Id id = 0;
  std::int64_t score = 0;
  std::string text;
  bool operator==(const ClosedSentence&) const = default;
};

// id -> index over ids 0..max_id of the source table. Ids absent from the
// source map to kNullIndex, ids present but outside the closure to
// kUndefinedIndex. Only ids that exist in the source are stored.
struct IdMap {
  Id max_id = -1;
  std::vector<std::pair<Id, Index>> entries;  // sorted by id

  Index at(Id id) const;
  bool operator==(const IdMap&) const = default;
};

struct ClosedKB {
  std::vector<ClosedAssertion> assertions;
  std::vector<ClosedConcept> concepts;
  std::vector<ClosedRelation> relations;
  std::vector<ClosedFrequency> frequencies;
  std::vector<ClosedFrame> frames;
  std::vector<ClosedSurfaceForm> surfaceforms;
  std::vector<ClosedRawAssertion> rawassertions;
  std::vector<ClosedSentence> sentences;
  std::array<IdMap, kTableCount> maps;
  // Concepts referenced by assertions occupy indices [0, input_concept_count).
  std::size_t input_concept_count = 0;

  std::size_t size(Table t) const;
  Index index_of(Table t, Id id) const;
  bool operator==(const ClosedKB&) const = default;
};

struct ClosureStats {
  // Registry construction counts as the first pass.
  int passes = 0;
  // added[t][k]: rows of table t that entered during sweep k (pass k + 2).
  std::array<std::vector<std::size_t>, kTableCount> added;
  std::size_t raised_concepts = 0;
  std::size_t raised_surfaceforms = 0;
  // Assertions whose best_raw_id names no raw assertion.
  std::size_t undefined_best_raw = 0;
  std::size_t zero_frequency_assertions = 0;
};

struct ClosureResult {
  ClosedKB kb;
  ClosureStats stats;
};

// Throws IntegrityError for any dangling reference other than best_raw_id,
// and for a raw assertion in the closure that lacks a sentence.
ClosureResult compute_closure(const RawTables& tables, const IdRegistry& registry);

// Facts about the whole KB that the per-assertion indicators consult.
struct IndicatorContext {
  std::vector<char> best_surface;  // surface index -> used as a best surface
  std::size_t input_concept_count = 0;
  static IndicatorContext build(const ClosedKB& kb);
};

int frame_indicator(const ClosedKB& kb, const ClosedAssertion& a);
int surface_indicator(const ClosedKB& kb, const IndicatorContext& ctx, const ClosedAssertion& a);
int raw_indicator(const ClosedKB& kb, const IndicatorContext& ctx, Index self,
                  const ClosedAssertion& a);

struct ScoreTriple {
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  std::int64_t s3 = 0;
};

std::int64_t discrepancy(const ScoreTriple& t);
std::int64_t half_discrepancy(const ScoreTriple& t);
// `raw_present` is false when best_raw is null or undefined.
int score_indicator(const ScoreTriple& t, bool raw_present);

// The triple for an assertion, or nullopt when its best raw is null/undefined.
std::optional<ScoreTriple> score_triple(const ClosedKB& kb, const ClosedAssertion& a);

// Fills the four indicator fields of every assertion.
void classify(ClosedKB& kb, unsigned threads = 1);

// Histogram of indicator values plus the half-discrepancy distribution.
struct IndicatorSummary {
  std::array<std::size_t, 5> frame{};
  std::array<std::size_t, 16> surface{};
  std::array<std::size_t, 38> raw{};
  std::array<std::size_t, 10> score{};
  std::map<std::int64_t, std::size_t> half_discrepancy;
};

IndicatorSummary summarize_indicators(const ClosedKB& kb);

struct Contradiction {
  Index concept1 = 0;
  Index concept2 = 0;
  Index relation = 0;
  // Lowest-index witnesses with positive and negative frequency value.
  Index affirming = 0;
  Index negating = 0;
  bool operator==(const Contradiction&) const = default;
};

// Sorted by (concept1, concept2, relation).
std::vector<Contradiction> detect_contradictions(const ClosedKB& kb);

// Throws IntegrityError if any stored index falls outside its table.
void verify_closed(const ClosedKB& kb);

}  // namespace cn4
