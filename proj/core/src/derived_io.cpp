#include "cn4/derived_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "cn4/error.hpp"
#include "cn4/graph.hpp"

namespace cn4 {

namespace {

struct Names {
  const char* dir;
  const char* table;
  const char* map;
};

Names names(Table t) {
  switch (t) {
    case Table::assertion:
      return {"assertions", "ConceptNet4Assertions.txt", "MapAssertionIDsFromConceptNet4.txt"};
    case Table::concept_:
      return {"concepts", "ConceptNet4Concepts.txt", "MapConceptIDsFromConceptNet4.txt"};
    case Table::relation:
      return {"relations", "ConceptNet4Relations.txt", "MapRelationIDsFromConceptNet4.txt"};
    case Table::frequency:
      return {"frequencies", "ConceptNet4Frequencies.txt", "MapFrequencyIDsFromConceptNet4.txt"};
    case Table::frame:
      return {"frames", "ConceptNet4Frames.txt", "MapFrameIDsFromConceptNet4.txt"};
    case Table::surfaceform:
      return {"surfaceForms", "ConceptNet4SurfaceForms.txt",
              "MapSurfaceFormIDsFromConceptNet4.txt"};
    case Table::rawassertion:
      return {"rawAssertions", "ConceptNet4RawAssertions.txt",
              "MapRawAssertionIDsFromConceptNet4.txt"};
    case Table::sentence:
      return {"sentences", "ConceptNet4Sentences.txt", "MapSentenceIDsFromConceptNet4.txt"};
  }
  return {"", "", ""};
}

constexpr const char* kRoot = "inputFiles";

std::string escape(std::string_view s, bool space) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else if (space && c == ' ') {
      out += "\\s";
    } else {
      out += c;
    }
  }
  return out;
}

class Writer {
 public:
  Writer& operator<<(std::int64_t v) {
    sep();
    char buf[24];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, p);
    return *this;
  }
  Writer& text(std::string_view s, bool space = false) {
    sep();
    out += escape(s, space);
    return *this;
  }
  void end() {
    out += '\n';
    first_ = true;
  }

  std::string out;

 private:
  void sep() {
    if (!first_) out += ' ';
    first_ = false;
  }
  bool first_ = true;
};

std::string render_map(const IdMap& m) {
  Writer w;
  auto it = m.entries.begin();
  for (Id id = 0; id <= m.max_id; ++id) {
    Index v = kNullIndex;
    if (it != m.entries.end() && it->first == id) v = (it++)->second;
    w << v;
    w.end();
  }
  return std::move(w.out);
}

std::string render_table(const ClosedKB& kb, Table t) {
  Writer w;
  switch (t) {
    case Table::assertion:
      for (const auto& a : kb.assertions) {
        w << a.id << a.concept1 << a.concept2 << a.relation << a.frequency << a.frame << a.surface1
          << a.surface2 << a.raw << a.score << a.frame_indicator << a.surface_indicator
          << a.raw_indicator << a.score_indicator;
        w.end();
      }
      break;
    case Table::concept_:
      for (const auto& c : kb.concepts) (w << c.id).text(c.text).end();
      break;
    case Table::relation:
      for (const auto& r : kb.relations) (w << r.id).text(r.name, true).text(r.description).end();
      break;
    case Table::frequency:
      for (const auto& f : kb.frequencies) (w << f.id << f.value).text(f.text).end();
      break;
    case Table::frame:
      for (const auto& f : kb.frames) (w << f.id << f.relation << f.frequency).text(f.text).end();
      break;
    case Table::surfaceform:
      for (const auto& s : kb.surfaceforms) (w << s.id << s.concept_index).text(s.text).end();
      break;
    case Table::rawassertion:
      for (const auto& r : kb.rawassertions) {
        w << r.id << r.sentence << r.assertion << r.surface1 << r.surface2 << r.frame << r.score;
        w.end();
      }
      break;
    case Table::sentence:
      for (const auto& s : kb.sentences) (w << s.id << s.score).text(s.text).end();
      break;
  }
  return std::move(w.out);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// Walks the lines of one derived file.
class Lines {
 public:
  Lines(std::string text, std::string source) : text_(std::move(text)), source_(std::move(source)) {}

  bool next() {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) fail("missing newline at end of file", lineno_ + 1);
    line_ = std::string_view(text_).substr(pos_, end - pos_);
    pos_ = end + 1;
    ++lineno_;
    cursor_ = 0;
    return true;
  }

  std::int64_t integer() {
    std::size_t end = line_.find(' ', cursor_);
    if (end == std::string_view::npos) end = line_.size();
    std::string_view tok = line_.substr(cursor_, end - cursor_);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
      fail("expected integer, found '" + std::string(tok) + "'", lineno_);
    cursor_ = end == line_.size() ? end : end + 1;
    at_end_ = end == line_.size();
    return v;
  }

  // A space-free escaped word (the relation name).
  std::string word() {
    std::size_t end = line_.find(' ', cursor_);
    if (end == std::string_view::npos) fail("expected another field", lineno_);
    std::string w = unescape(line_.substr(cursor_, end - cursor_));
    cursor_ = end + 1;
    return w;
  }

  // The remainder of the line; the separating space must be present.
  std::string rest() {
    if (at_end_) fail("missing text field", lineno_);
    std::string s = unescape(line_.substr(cursor_));
    cursor_ = line_.size();
    return s;
  }

  void finish() {
    if (!at_end_ || cursor_ != line_.size()) fail("unexpected trailing fields", lineno_);
  }

  std::size_t lineno() const { return lineno_; }
  [[noreturn]] void fail(const std::string& what, std::size_t line) const {
    throw ParseError(source_, line, what);
  }

 private:
  std::string unescape(std::string_view s) const {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '\\') {
        out += s[i];
        continue;
      }
      if (i + 1 == s.size()) fail("dangling escape", lineno_);
      char e = s[++i];
      if (e == '\\') out += '\\';
      else if (e == 'n') out += '\n';
      else if (e == 's') out += ' ';
      else fail(std::string("unknown escape \\") + e, lineno_);
    }
    return out;
  }

  std::string text_;
  std::string source_;
  std::string_view line_;
  std::size_t pos_ = 0;
  std::size_t lineno_ = 0;
  std::size_t cursor_ = 0;
  bool at_end_ = false;
};

IdMap load_map(Lines& in, std::size_t table_size) {
  IdMap m;
  Id id = 0;
  while (in.next()) {
    Index v = in.integer();
    in.finish();
    if (v < kUndefinedIndex || v >= static_cast<Index>(table_size))
      in.fail("map value out of range", in.lineno());
    if (v != kNullIndex) m.entries.emplace_back(id, v);
    ++id;
  }
  m.max_id = id - 1;
  return m;
}

void check_map_consistency(const ClosedKB& kb, Table t, const std::string& source) {
  std::vector<char> seen(kb.size(t), 0);
  const IdMap& m = kb.maps[table_slot(t)];
  for (const auto& [id, ix] : m.entries) {
    if (ix < 0) continue;
    if (seen[ix]) throw ParseError(source, 0, "index " + std::to_string(ix) + " mapped twice");
    seen[ix] = 1;
  }
  auto id_at = [&](std::size_t i) -> Id {
    switch (t) {
      case Table::assertion: return kb.assertions[i].id;
      case Table::concept_: return kb.concepts[i].id;
      case Table::relation: return kb.relations[i].id;
      case Table::frequency: return kb.frequencies[i].id;
      case Table::frame: return kb.frames[i].id;
      case Table::surfaceform: return kb.surfaceforms[i].id;
      case Table::rawassertion: return kb.rawassertions[i].id;
      case Table::sentence: return kb.sentences[i].id;
    }
    return -1;
  };
  for (std::size_t i = 0; i < kb.size(t); ++i)
    if (m.at(id_at(i)) != static_cast<Index>(i))
      throw ParseError(source, 0, "record " + std::to_string(i) + " disagrees with its map");
}

}  // namespace

std::string derived_table_path(Table t) {
  Names n = names(t);
  return std::string(kRoot) + "/" + n.dir + "/" + n.table;
}

std::string derived_map_path(Table t) {
  Names n = names(t);
  return std::string(kRoot) + "/" + n.dir + "/" + n.map;
}

std::vector<std::pair<std::string, std::string>> render_derived_files(const ClosedKB& kb) {
  std::vector<std::pair<std::string, std::string>> files;
  for (Table t : kAllTables) {
    files.emplace_back(derived_table_path(t), render_table(kb, t));
    files.emplace_back(derived_map_path(t), render_map(kb.maps[table_slot(t)]));
  }
  GraphSpec full;
  full.score = ScoreFilter::all;
  full.loops = Loops::keep;
  full.polarity = Polarity::both;
  InducedGraph g = induce(kb, full);
  std::ostringstream dm, dg, ug;
  write_edges_multi(g, dm);
  write_edges_collapsed(g.directed, dg);
  write_edges_collapsed(g.undirected, ug);
  std::string edges = std::string(kRoot) + "/edges/";
  files.emplace_back(edges + "ConceptNet4EdgesDM.txt", std::move(dm).str());
  files.emplace_back(edges + "ConceptNet4EdgesDG.txt", std::move(dg).str());
  files.emplace_back(edges + "ConceptNet4EdgesUG.txt", std::move(ug).str());
  return files;
}

void emit_derived_files(const ClosedKB& kb, const std::filesystem::path& dir) {
  for (const auto& [rel, content] : render_derived_files(kb)) {
    std::filesystem::path p = dir / rel;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    out << content;
    if (!out) throw IoError("write failed: " + p.string());
  }
}

ClosedKB load_derived_files(const std::filesystem::path& dir) {
  std::filesystem::path base = dir;
  if (std::filesystem::exists(dir / kRoot)) base = dir;
  else if (dir.filename() == kRoot) base = dir.parent_path();
  auto open = [&](const std::string& rel) {
    std::filesystem::path p = base / rel;
    return Lines(read_file(p), p.string());
  };
  ClosedKB kb;
  {
    Lines in = open(derived_table_path(Table::assertion));
    while (in.next()) {
      ClosedAssertion a;
      a.id = in.integer();
      a.concept1 = in.integer();
      a.concept2 = in.integer();
      a.relation = in.integer();
      a.frequency = in.integer();
      a.frame = in.integer();
      a.surface1 = in.integer();
      a.surface2 = in.integer();
      a.raw = in.integer();
      a.score = in.integer();
      a.frame_indicator = static_cast<int>(in.integer());
      a.surface_indicator = static_cast<int>(in.integer());
      a.raw_indicator = static_cast<int>(in.integer());
      a.score_indicator = static_cast<int>(in.integer());
      in.finish();
      if (a.frame_indicator < 0 || a.frame_indicator > 4 || a.surface_indicator < 0 ||
          a.surface_indicator > 15 || a.raw_indicator < 0 || a.raw_indicator > 37 ||
          a.score_indicator < 0 || a.score_indicator > 9)
        in.fail("indicator out of range", in.lineno());
      kb.assertions.push_back(a);
    }
  }
  {
    Lines in = open(derived_table_path(Table::concept_));
    while (in.next()) {
      ClosedConcept c;
      c.id = in.integer();
      c.text = in.rest();
      kb.concepts.push_back(std::move(c));
    }
  }
  {
    Lines in = open(derived_table_path(Table::relation));
    while (in.next()) {
      ClosedRelation r;
      r.id = in.integer();
      r.name = in.word();
      r.description = in.rest();
      kb.relations.push_back(std::move(r));
    }
  }
  {
    Lines in = open(derived_table_path(Table::frequency));
    while (in.next()) {
      ClosedFrequency f;
      f.id = in.integer();
      f.value = in.integer();
      f.text = in.rest();
      kb.frequencies.push_back(std::move(f));
    }
  }
  {
    Lines in = open(derived_table_path(Table::frame));
    while (in.next()) {
      ClosedFrame f;
      f.id = in.integer();
      f.relation = in.integer();
      f.frequency = in.integer();
      f.text = in.rest();
      kb.frames.push_back(std::move(f));
    }
  }
  {
    Lines in = open(derived_table_path(Table::surfaceform));
    while (in.next()) {
      ClosedSurfaceForm s;
      s.id = in.integer();
      s.concept_index = in.integer();
      s.text = in.rest();
      kb.surfaceforms.push_back(std::move(s));
    }
  }
  {
    Lines in = open(derived_table_path(Table::rawassertion));
    while (in.next()) {
      ClosedRawAssertion r;
      r.id = in.integer();
      r.sentence = in.integer();
      r.assertion = in.integer();
      r.surface1 = in.integer();
      r.surface2 = in.integer();
      r.frame = in.integer();
      r.score = in.integer();
      in.finish();
      kb.rawassertions.push_back(r);
    }
  }
  {
    Lines in = open(derived_table_path(Table::sentence));
    while (in.next()) {
      ClosedSentence s;
      s.id = in.integer();
      s.score = in.integer();
      s.text = in.rest();
      kb.sentences.push_back(std::move(s));
    }
  }
  for (Table t : kAllTables) {
    Lines in = open(derived_map_path(t));
    kb.maps[table_slot(t)] = load_map(in, kb.size(t));
  }

  std::set<Index> input;
  for (const auto& a : kb.assertions) {
    input.insert(a.concept1);
    input.insert(a.concept2);
  }
  kb.input_concept_count = input.size();
  std::string concepts_file = (base / derived_table_path(Table::assertion)).string();
  if (!input.empty() && (*input.begin() < 0 || *input.rbegin() + 1 != static_cast<Index>(input.size())))
    throw ParseError(concepts_file, 0, "assertion concepts do not occupy a prefix of the concept table");
  try {
    verify_closed(kb);
  } catch (const IntegrityError& e) {
    throw ParseError(concepts_file, 0, e.what());
  }
  for (Table t : kAllTables) check_map_consistency(kb, t, (base / derived_map_path(t)).string());
  return kb;
}

}  // namespace cn4
