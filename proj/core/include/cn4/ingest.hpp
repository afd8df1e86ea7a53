#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cn4 {

using Id = std::int64_t;
using OptId = std::optional<Id>;

enum class Table : std::uint8_t {
  assertion,
  concept_,
  relation,
  frequency,
  frame,
  surfaceform,
  rawassertion,
  sentence,
};

inline constexpr std::size_t kTableCount = 8;
inline constexpr std::array<Table, kTableCount> kAllTables{
    Table::assertion, Table::concept_,     Table::relation,     Table::frequency,
    Table::frame,     Table::surfaceform, Table::rawassertion, Table::sentence};

constexpr std::size_t table_slot(Table t) { return static_cast<std::size_t>(t); }

// Source table name, e.g. "conceptnet_assertion".
std::string_view table_name(Table t);
// Short name used in reports, e.g. "assertion".
std::string_view table_label(Table t);
std::span<const std::string_view> table_columns(Table t);

// Columns not used by any analysis are kept verbatim so rows re-serialize
// byte for byte.
struct AssertionRow {
  static constexpr Table kind = Table::assertion;
  Id id = 0;
  std::string language_id;
  Id relation_id = 0;
  Id concept1_id = 0;
  Id concept2_id = 0;
  std::int64_t score = 0;
  Id frequency_id = 0;
  OptId best_surface1_id;
  OptId best_surface2_id;
  OptId best_raw_id;
  OptId best_frame_id;
  bool operator==(const AssertionRow&) const = default;
};

struct ConceptRow {
  static constexpr Table kind = Table::concept_;
  Id id = 0;
  std::string language_id;
  std::string text;
  std::string num_assertions;
  std::string words;
  std::string visible;
  bool operator==(const ConceptRow&) const = default;
};

struct RelationRow {
  static constexpr Table kind = Table::relation;
  Id id = 0;
  std::string name;
  std::string description;
  bool operator==(const RelationRow&) const = default;
};

struct FrequencyRow {
  static constexpr Table kind = Table::frequency;
  Id id = 0;
  std::string language_id;
  std::string text;
  std::int64_t value = 0;
  bool operator==(const FrequencyRow&) const = default;
};

struct FrameRow {
  static constexpr Table kind = Table::frame;
  Id id = 0;
  std::string language_id;
  std::string text;
  Id relation_id = 0;
  std::string goodness;
  Id frequency_id = 0;
  std::string question_yn;
  std::string question1;
  std::string question2;
  bool operator==(const FrameRow&) const = default;
};

struct SurfaceFormRow {
  static constexpr Table kind = Table::surfaceform;
  Id id = 0;
  std::string language_id;
  Id concept_id = 0;
  std::string text;
  std::string residue;
  std::string use_count;
  bool operator==(const SurfaceFormRow&) const = default;
};

struct RawAssertionRow {
  static constexpr Table kind = Table::rawassertion;
  Id id = 0;
  std::string created;
  std::string updated;
  OptId sentence_id;
  OptId assertion_id;
  std::string creator_id;
  OptId surface1_id;
  OptId surface2_id;
  OptId frame_id;
  std::string batch_id;
  std::string language_id;
  std::int64_t score = 0;
  bool operator==(const RawAssertionRow&) const = default;
};

struct SentenceRow {
  static constexpr Table kind = Table::sentence;
  Id id = 0;
  std::string text;
  std::string creator_id;
  std::string created_on;
  std::string language_id;
  std::string activity_id;
  std::int64_t score = 0;
  bool operator==(const SentenceRow&) const = default;
};

struct RawTables {
  std::vector<AssertionRow> assertions;
  std::vector<ConceptRow> concepts;
  std::vector<RelationRow> relations;
  std::vector<FrequencyRow> frequencies;
  std::vector<FrameRow> frames;
  std::vector<SurfaceFormRow> surfaceforms;
  std::vector<RawAssertionRow> rawassertions;
  std::vector<SentenceRow> sentences;

  std::size_t size(Table t) const;
  bool operator==(const RawTables&) const = default;
};

// Field escapes: "\\" backslash, "\n" newline, and the delimiter itself
// ("\t" or "\,"). Anything else after a backslash is a parse error, as is a
// raw delimiter inside a field (it would change the arity).
template <class Row>
std::vector<Row> parse_table_text(std::string_view text, char delimiter,
                                  const std::string& source = "<memory>");

template <class Row>
std::vector<Row> parse_table_dump(const std::filesystem::path& path, char delimiter);

template <class Row>
std::string serialize_table(std::span<const Row> rows, char delimiter);

// Dump files are named <table_name>.tsv (tab) or <table_name>.csv (comma).
std::filesystem::path dump_file(const std::filesystem::path& dir, Table t, char delimiter);

// Reads all eight tables; files are parsed concurrently up to `threads`.
RawTables load_dump(const std::filesystem::path& dir, char delimiter, unsigned threads = 1);

void write_dump(const RawTables& tables, const std::filesystem::path& dir, char delimiter);

class IdRegistry {
 public:
  // Throws IntegrityError on a duplicate ID within one table.
  static IdRegistry build(const RawTables& tables);

  bool contains(Table t, Id id) const;
  // Position of the row with this ID in the parsed table.
  std::optional<std::size_t> row_of(Table t, Id id) const;
  std::size_t size(Table t) const { return slots_[table_slot(t)].size(); }
  // -1 when the table is empty.
  Id max_id(Table t) const;
  std::span<const std::pair<Id, std::size_t>> entries(Table t) const {
    return slots_[table_slot(t)];
  }

 private:
  std::array<std::vector<std::pair<Id, std::size_t>>, kTableCount> slots_;
};

enum class Resolution : std::uint8_t { valid, null, undefined };

struct Resolved {
  Resolution kind = Resolution::null;
  Id id = 0;
  bool operator==(const Resolved&) const = default;
};

Resolved resolve_reference(const IdRegistry& registry, Table target, OptId value);

struct ReferenceSummary {
  Table from;
  std::string_view field;
  Table to;
  std::size_t valid = 0;
  std::size_t null = 0;
  std::size_t undefined = 0;
};

// Resolution counts for every foreign-key column, over all rows.
std::vector<ReferenceSummary> summarize_references(const RawTables& tables,
                                                   const IdRegistry& registry);

}  // namespace cn4
