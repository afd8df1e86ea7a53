#include "cn4/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cn4/error.hpp"
#include "cn4/parallel.hpp"

namespace cn4 {

namespace {

constexpr std::string_view kAssertionColumns[] = {
    "id",           "language_id",      "relation_id",      "concept1_id",
    "concept2_id",  "score",            "frequency_id",     "best_surface1_id",
    "best_surface2_id", "best_raw_id",  "best_frame_id"};
constexpr std::string_view kConceptColumns[] = {"id",    "language_id", "text", "num_assertions",
                                                "words", "visible"};
constexpr std::string_view kRelationColumns[] = {"id", "name", "description"};
constexpr std::string_view kFrequencyColumns[] = {"id", "language_id", "text", "value"};
constexpr std::string_view kFrameColumns[] = {"id",           "language_id", "text",
                                              "relation_id",  "goodness",    "frequency_id",
                                              "question_yn",  "question1",   "question2"};
constexpr std::string_view kSurfaceColumns[] = {"id",   "language_id", "concept_id",
                                                "text", "residue",     "use_count"};
constexpr std::string_view kRawColumns[] = {
    "id",         "created",     "updated",     "sentence_id", "assertion_id", "creator_id",
    "surface1_id", "surface2_id", "frame_id",   "batch_id",    "language_id",  "score"};
constexpr std::string_view kSentenceColumns[] = {"id",          "text",        "creator_id",
                                                 "created_on",  "language_id", "activity_id",
                                                 "score"};

bool canonical_integer(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  std::size_t digits = s[0] == '-' ? 1 : 0;
  if (digits == s.size()) return false;
  if (s[digits] == '0' && (s.size() > digits + 1 || digits == 1)) return false;
  for (std::size_t i = digits; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

class Decoder {
 public:
  Decoder(std::vector<std::string>& fields, const std::string& source, std::size_t line)
      : fields_(fields), source_(source), line_(line) {}

  void operator()(std::int64_t& v) {
    std::string& f = next();
    if (!canonical_integer(f, v))
      throw ParseError(source_, line_, "column " + std::to_string(col_) + ": bad integer '" + f + "'");
  }
  void operator()(OptId& v) {
    std::string& f = next();
    if (f.empty()) {
      v.reset();
      return;
    }
    std::int64_t x = 0;
    if (!canonical_integer(f, x))
      throw ParseError(source_, line_, "column " + std::to_string(col_) + ": bad integer '" + f + "'");
    v = x;
  }
  void operator()(std::string& v) { v = std::move(next()); }

 private:
  std::string& next() { return fields_[col_++]; }

  std::vector<std::string>& fields_;
  const std::string& source_;
  std::size_t line_;
  std::size_t col_ = 0;
};

class Encoder {
 public:
  Encoder(std::string& out, char delimiter) : out_(out), delimiter_(delimiter) {}

  void operator()(const std::int64_t& v) {
    sep();
    char buf[24];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out_.append(buf, p);
  }
  void operator()(const OptId& v) {
    if (v) {
      (*this)(*v);
    } else {
      sep();
    }
  }
  void operator()(const std::string& v) {
    sep();
    for (char c : v) {
      if (c == '\\') {
        out_ += "\\\\";
      } else if (c == '\n') {
        out_ += "\\n";
      } else if (c == delimiter_) {
        out_ += delimiter_ == '\t' ? "\\t" : std::string("\\") + delimiter_;
      } else {
        out_ += c;
      }
    }
  }

 private:
  void sep() {
    if (!first_) out_ += delimiter_;
    first_ = false;
  }

  std::string& out_;
  char delimiter_;
  bool first_ = true;
};

template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, AssertionRow>
void describe(V& v, R& r) {
  v(r.id), v(r.language_id), v(r.relation_id), v(r.concept1_id), v(r.concept2_id), v(r.score),
      v(r.frequency_id), v(r.best_surface1_id), v(r.best_surface2_id), v(r.best_raw_id),
      v(r.best_frame_id);
}
template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, ConceptRow>
void describe(V& v, R& r) {
  v(r.id), v(r.language_id), v(r.text), v(r.num_assertions), v(r.words), v(r.visible);
}
template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, RelationRow>
void describe(V& v, R& r) {
  v(r.id), v(r.name), v(r.description);
}
template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, FrequencyRow>
void describe(V& v, R& r) {
  v(r.id), v(r.language_id), v(r.text), v(r.value);
}
template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, FrameRow>
void describe(V& v, R& r) {
  v(r.id), v(r.language_id), v(r.text), v(r.relation_id), v(r.goodness), v(r.frequency_id),
      v(r.question_yn), v(r.question1), v(r.question2);
}
template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, SurfaceFormRow>
void describe(V& v, R& r) {
  v(r.id), v(r.language_id), v(r.concept_id), v(r.text), v(r.residue), v(r.use_count);
}
template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, RawAssertionRow>
void describe(V& v, R& r) {
  v(r.id), v(r.created), v(r.updated), v(r.sentence_id), v(r.assertion_id), v(r.creator_id),
      v(r.surface1_id), v(r.surface2_id), v(r.frame_id), v(r.batch_id), v(r.language_id),
      v(r.score);
}
template <class V, class R>
  requires std::same_as<std::remove_const_t<R>, SentenceRow>
void describe(V& v, R& r) {
  v(r.id), v(r.text), v(r.creator_id), v(r.created_on), v(r.language_id), v(r.activity_id),
      v(r.score);
}

// Splits one line into unescaped fields.
void split_fields(std::string_view line, char delimiter, const std::string& source,
                  std::size_t lineno, std::vector<std::string>& fields) {
  fields.clear();
  fields.emplace_back();
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == delimiter) {
      fields.emplace_back();
    } else if (c == '\\') {
      if (i + 1 == line.size()) throw ParseError(source, lineno, "dangling escape at end of line");
      char e = line[++i];
      if (e == '\\') {
        fields.back() += '\\';
      } else if (e == 'n') {
        fields.back() += '\n';
      } else if ((delimiter == '\t' && e == 't') || (delimiter != '\t' && e == delimiter)) {
        fields.back() += delimiter;
      } else {
        throw ParseError(source, lineno, std::string("unknown escape \\") + e);
      }
    } else {
      fields.back() += c;
    }
  }
}

void check_delimiter(char delimiter) {
  if (delimiter == '\\' || delimiter == '\n' || delimiter == 'n')
    throw ParameterError(std::string("unusable delimiter '") + delimiter + "'");
}

template <class Row>
void check_row(const Row& row, const std::string& source, std::size_t lineno) {
  if constexpr (std::is_same_v<Row, FrequencyRow>) {
    if (row.value < -10 || row.value > 10)
      throw ParseError(source, lineno, "frequency value " + std::to_string(row.value) +
                                           " outside [-10, 10]");
  }
  if (row.id < 0) throw ParseError(source, lineno, "negative id " + std::to_string(row.id));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return std::move(ss).str();
}

}  // namespace

std::string_view table_name(Table t) {
  switch (t) {
    case Table::assertion: return "conceptnet_assertion";
    case Table::concept_: return "conceptnet_concept";
    case Table::relation: return "conceptnet_relation";
    case Table::frequency: return "nl_frequency";
    case Table::frame: return "conceptnet_frame";
    case Table::surfaceform: return "conceptnet_surfaceform";
    case Table::rawassertion: return "conceptnet_rawassertion";
    case Table::sentence: return "corpus_sentence";
  }
  return "?";
}

std::string_view table_label(Table t) {
  switch (t) {
    case Table::assertion: return "assertion";
    case Table::concept_: return "concept";
    case Table::relation: return "relation";
    case Table::frequency: return "frequency";
    case Table::frame: return "frame";
    case Table::surfaceform: return "surfaceform";
    case Table::rawassertion: return "rawassertion";
    case Table::sentence: return "sentence";
  }
  return "?";
}

std::span<const std::string_view> table_columns(Table t) {
  switch (t) {
    case Table::assertion: return kAssertionColumns;
    case Table::concept_: return kConceptColumns;
    case Table::relation: return kRelationColumns;
    case Table::frequency: return kFrequencyColumns;
    case Table::frame: return kFrameColumns;
    case Table::surfaceform: return kSurfaceColumns;
    case Table::rawassertion: return kRawColumns;
    case Table::sentence: return kSentenceColumns;
  }
  return {};
}

std::size_t RawTables::size(Table t) const {
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

template <class Row>
std::vector<Row> parse_table_text(std::string_view text, char delimiter, const std::string& source) {
  check_delimiter(delimiter);
  const std::size_t arity = table_columns(Row::kind).size();
  std::vector<Row> rows;
  std::vector<std::string> fields;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    split_fields(line, delimiter, source, lineno, fields);
    if (fields.size() != arity)
      throw SchemaError(source, lineno,
                        std::string(table_name(Row::kind)) + " expects " + std::to_string(arity) +
                            " columns, found " + std::to_string(fields.size()));
    Row row;
    Decoder dec(fields, source, lineno);
    describe(dec, row);
    check_row(row, source, lineno);
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Row>
std::vector<Row> parse_table_dump(const std::filesystem::path& path, char delimiter) {
  return parse_table_text<Row>(read_file(path), delimiter, path.string());
}

template <class Row>
std::string serialize_table(std::span<const Row> rows, char delimiter) {
  check_delimiter(delimiter);
  std::string out;
  for (const Row& r : rows) {
    Encoder enc(out, delimiter);
    describe(enc, r);
    out += '\n';
  }
  return out;
}

#define CN4_INSTANTIATE(Row)                                                                   \
  template std::vector<Row> parse_table_text<Row>(std::string_view, char, const std::string&); \
  template std::vector<Row> parse_table_dump<Row>(const std::filesystem::path&, char);         \
  template std::string serialize_table<Row>(std::span<const Row>, char);

CN4_INSTANTIATE(AssertionRow)
CN4_INSTANTIATE(ConceptRow)
CN4_INSTANTIATE(RelationRow)
CN4_INSTANTIATE(FrequencyRow)
CN4_INSTANTIATE(FrameRow)
CN4_INSTANTIATE(SurfaceFormRow)
CN4_INSTANTIATE(RawAssertionRow)
CN4_INSTANTIATE(SentenceRow)
#undef CN4_INSTANTIATE

std::filesystem::path dump_file(const std::filesystem::path& dir, Table t, char delimiter) {
  return dir / (std::string(table_name(t)) + (delimiter == '\t' ? ".tsv" : ".csv"));
}

RawTables load_dump(const std::filesystem::path& dir, char delimiter, unsigned threads) {
  RawTables out;
  parallel_for(kTableCount, threads, [&](std::size_t i, unsigned) {
    Table t = kAllTables[i];
    auto path = dump_file(dir, t, delimiter);
    switch (t) {
      case Table::assertion: out.assertions = parse_table_dump<AssertionRow>(path, delimiter); break;
      case Table::concept_: out.concepts = parse_table_dump<ConceptRow>(path, delimiter); break;
      case Table::relation: out.relations = parse_table_dump<RelationRow>(path, delimiter); break;
      case Table::frequency: out.frequencies = parse_table_dump<FrequencyRow>(path, delimiter); break;
      case Table::frame: out.frames = parse_table_dump<FrameRow>(path, delimiter); break;
      case Table::surfaceform:
        out.surfaceforms = parse_table_dump<SurfaceFormRow>(path, delimiter);
        break;
      case Table::rawassertion:
        out.rawassertions = parse_table_dump<RawAssertionRow>(path, delimiter);
        break;
      case Table::sentence: out.sentences = parse_table_dump<SentenceRow>(path, delimiter); break;
    }
  });
  return out;
}

namespace {

template <class Row>
void write_table(const std::vector<Row>& rows, const std::filesystem::path& path, char delimiter) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize_table<Row>(rows, delimiter);
  if (!out) throw IoError("write failed: " + path.string());
}

template <class Row>
void register_rows(const std::vector<Row>& rows, std::vector<std::pair<Id, std::size_t>>& slot) {
  slot.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) slot.emplace_back(rows[i].id, i);
  std::sort(slot.begin(), slot.end());
  auto dup = std::adjacent_find(slot.begin(), slot.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; });
  if (dup != slot.end())
    throw IntegrityError("duplicate id " + std::to_string(dup->first) + " in table " +
                         std::string(table_name(Row::kind)));
}

}  // namespace

void write_dump(const RawTables& tables, const std::filesystem::path& dir, char delimiter) {
  std::filesystem::create_directories(dir);
  write_table(tables.assertions, dump_file(dir, Table::assertion, delimiter), delimiter);
  write_table(tables.concepts, dump_file(dir, Table::concept_, delimiter), delimiter);
  write_table(tables.relations, dump_file(dir, Table::relation, delimiter), delimiter);
  write_table(tables.frequencies, dump_file(dir, Table::frequency, delimiter), delimiter);
  write_table(tables.frames, dump_file(dir, Table::frame, delimiter), delimiter);
  write_table(tables.surfaceforms, dump_file(dir, Table::surfaceform, delimiter), delimiter);
  write_table(tables.rawassertions, dump_file(dir, Table::rawassertion, delimiter), delimiter);
  write_table(tables.sentences, dump_file(dir, Table::sentence, delimiter), delimiter);
}

IdRegistry IdRegistry::build(const RawTables& tables) {
  IdRegistry reg;
  register_rows(tables.assertions, reg.slots_[table_slot(Table::assertion)]);
  register_rows(tables.concepts, reg.slots_[table_slot(Table::concept_)]);
  register_rows(tables.relations, reg.slots_[table_slot(Table::relation)]);
  register_rows(tables.frequencies, reg.slots_[table_slot(Table::frequency)]);
  register_rows(tables.frames, reg.slots_[table_slot(Table::frame)]);
  register_rows(tables.surfaceforms, reg.slots_[table_slot(Table::surfaceform)]);
  register_rows(tables.rawassertions, reg.slots_[table_slot(Table::rawassertion)]);
  register_rows(tables.sentences, reg.slots_[table_slot(Table::sentence)]);
  return reg;
}

std::optional<std::size_t> IdRegistry::row_of(Table t, Id id) const {
  const auto& slot = slots_[table_slot(t)];
  auto it = std::lower_bound(slot.begin(), slot.end(), id,
                             [](const auto& e, Id key) { return e.first < key; });
  if (it == slot.end() || it->first != id) return std::nullopt;
  return it->second;
}

bool IdRegistry::contains(Table t, Id id) const { return row_of(t, id).has_value(); }

Id IdRegistry::max_id(Table t) const {
  const auto& slot = slots_[table_slot(t)];
  return slot.empty() ? -1 : slot.back().first;
}

Resolved resolve_reference(const IdRegistry& registry, Table target, OptId value) {
  if (!value) return {Resolution::null, 0};
  if (registry.contains(target, *value)) return {Resolution::valid, *value};
  return {Resolution::undefined, *value};
}

std::vector<ReferenceSummary> summarize_references(const RawTables& tables,
                                                   const IdRegistry& registry) {
  std::vector<ReferenceSummary> out;
  auto count = [&](Table from, std::string_view field, Table to, auto&& rows, auto&& get) {
    ReferenceSummary s{from, field, to};
    for (const auto& r : rows) {
      switch (resolve_reference(registry, to, get(r)).kind) {
        case Resolution::valid: ++s.valid; break;
        case Resolution::null: ++s.null; break;
        case Resolution::undefined: ++s.undefined; break;
      }
    }
    out.push_back(s);
  };
  using A = AssertionRow;
  const auto& as = tables.assertions;
  count(Table::assertion, "relation_id", Table::relation, as, [](const A& r) -> OptId { return r.relation_id; });
  count(Table::assertion, "concept1_id", Table::concept_, as, [](const A& r) -> OptId { return r.concept1_id; });
  count(Table::assertion, "concept2_id", Table::concept_, as, [](const A& r) -> OptId { return r.concept2_id; });
  count(Table::assertion, "frequency_id", Table::frequency, as, [](const A& r) -> OptId { return r.frequency_id; });
  count(Table::assertion, "best_surface1_id", Table::surfaceform, as, [](const A& r) { return r.best_surface1_id; });
  count(Table::assertion, "best_surface2_id", Table::surfaceform, as, [](const A& r) { return r.best_surface2_id; });
  count(Table::assertion, "best_raw_id", Table::rawassertion, as, [](const A& r) { return r.best_raw_id; });
  count(Table::assertion, "best_frame_id", Table::frame, as, [](const A& r) { return r.best_frame_id; });
  using F = FrameRow;
  count(Table::frame, "relation_id", Table::relation, tables.frames, [](const F& r) -> OptId { return r.relation_id; });
  count(Table::frame, "frequency_id", Table::frequency, tables.frames, [](const F& r) -> OptId { return r.frequency_id; });
  count(Table::surfaceform, "concept_id", Table::concept_, tables.surfaceforms,
        [](const SurfaceFormRow& r) -> OptId { return r.concept_id; });
  using R = RawAssertionRow;
  const auto& rs = tables.rawassertions;
  count(Table::rawassertion, "sentence_id", Table::sentence, rs, [](const R& r) { return r.sentence_id; });
  count(Table::rawassertion, "assertion_id", Table::assertion, rs, [](const R& r) { return r.assertion_id; });
  count(Table::rawassertion, "surface1_id", Table::surfaceform, rs, [](const R& r) { return r.surface1_id; });
  count(Table::rawassertion, "surface2_id", Table::surfaceform, rs, [](const R& r) { return r.surface2_id; });
  count(Table::rawassertion, "frame_id", Table::frame, rs, [](const R& r) { return r.frame_id; });
  return out;
}

}  // namespace cn4
