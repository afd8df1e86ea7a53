#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cn4/error.hpp"
#include "cn4/ingest.hpp"
#include "cn4/rng.hpp"

#ifndef CN4_FIXTURE_DIR
#error "CN4_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fs = std::filesystem;
using namespace cn4;

namespace {

fs::path mini() { return fs::path(CN4_FIXTURE_DIR) / "mini"; }

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cn4_ingest_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Parse, RelationRowsWithEscapes) {
  auto rows = parse_table_text<RelationRow>("1\tIsA\tis a\\tkind\\nof \\\\ x\n2\tPartOf\t\n", '\t');
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].description, "is a\tkind\nof \\ x");
  EXPECT_EQ(rows[1].name, "PartOf");
  EXPECT_EQ(rows[1].description, "");
}

TEST(Parse, CommaDelimiterEscape) {
  auto rows = parse_table_text<RelationRow>("3,UsedFor,for\\, as in tools\n", ',');
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].description, "for, as in tools");
}

TEST(Parse, NullableReferencesAreEmpty) {
  auto rows = parse_table_text<AssertionRow>("5\ten\t1\t2\t3\t4\t1\t\t\t\t\n", '\t');
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].best_surface1_id.has_value());
  EXPECT_FALSE(rows[0].best_frame_id.has_value());
  EXPECT_EQ(rows[0].score, 4);
}

TEST(Parse, UnknownEscapeIsRejected) {
  EXPECT_THROW(parse_table_text<RelationRow>("1\tIsA\tbad \\q\n", '\t'), ParseError);
}

TEST(Parse, NonCanonicalIntegersAreRejected) {
  for (const char* id : {"01", "+1", "-0", "1.0", "", " 1", "x"})
    EXPECT_THROW(parse_table_text<RelationRow>(std::string(id) + "\tIsA\td\n", '\t'), ParseError)
        << id;
}

TEST(Parse, WrongArityIsSchemaErrorWithLine) {
  try {
    parse_table_text<RelationRow>("1\tIsA\td\n2\tPartOf\n", '\t', "rel");
    FAIL() << "no exception";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.source(), "rel");
  }
}

TEST(Parse, FrequencyValueOutOfRange) {
  EXPECT_THROW(parse_table_text<FrequencyRow>("1\ten\tx\t11\n", '\t'), ParseError);
  EXPECT_NO_THROW(parse_table_text<FrequencyRow>("1\ten\tx\t-10\n", '\t'));
}

TEST(Parse, NegativeIdIsRejected) {
  EXPECT_THROW(parse_table_text<RelationRow>("-1\tIsA\td\n", '\t'), ParseError);
}

TEST(Parse, SerializeThenParseIsIdentity) {
  Rng rng(7);
  const std::string alphabet = "ab \t\n\\,{}x";
  for (int round = 0; round < 50; ++round) {
    std::vector<SentenceRow> rows;
    for (int i = 0; i < 20; ++i) {
      SentenceRow r;
      r.id = static_cast<Id>(rng.below(1000000));
      for (std::uint64_t k = rng.below(12); k > 0; --k) r.text += alphabet[rng.below(alphabet.size())];
      r.creator_id = std::to_string(rng.below(50));
      r.score = static_cast<std::int64_t>(rng.below(21)) - 10;
      rows.push_back(r);
    }
    for (char d : {'\t', ','}) {
      auto text = serialize_table<SentenceRow>(rows, d);
      EXPECT_EQ(parse_table_text<SentenceRow>(text, d), rows);
    }
  }
}

TEST(Dump, FixtureLoadsWithExpectedRowCounts) {
  auto t = load_dump(mini(), '\t');
  EXPECT_EQ(t.assertions.size(), 52u);
  EXPECT_EQ(t.concepts.size(), 16u);
  EXPECT_EQ(t.relations.size(), 6u);
  EXPECT_EQ(t.frequencies.size(), 7u);
  EXPECT_EQ(t.frames.size(), 16u);
  EXPECT_EQ(t.surfaceforms.size(), 18u);
  EXPECT_EQ(t.rawassertions.size(), 48u);
  EXPECT_EQ(t.sentences.size(), 48u);
}

TEST(Dump, WriteThenLoadIsIdentityForBothDelimiters) {
  auto t = load_dump(mini(), '\t', 4);
  for (char d : {'\t', ','}) {
    auto dir = scratch(d == '\t' ? "tab" : "comma");
    write_dump(t, dir, d);
    EXPECT_TRUE(fs::exists(dump_file(dir, Table::assertion, d)));
    EXPECT_EQ(load_dump(dir, d), t);
    fs::remove_all(dir);
  }
}

TEST(Dump, MissingFileIsAnError) {
  auto dir = scratch("missing");
  EXPECT_THROW(load_dump(dir, '\t'), Error);
  fs::remove_all(dir);
}

TEST(Registry, DuplicateIdsAreIntegrityErrors) {
  RawTables t;
  t.relations = parse_table_text<RelationRow>("1\tIsA\t\n1\tPartOf\t\n", '\t');
  EXPECT_THROW(IdRegistry::build(t), IntegrityError);
}

TEST(Registry, ResolvesValidNullAndUndefined) {
  auto t = load_dump(mini(), '\t');
  auto reg = IdRegistry::build(t);
  EXPECT_EQ(resolve_reference(reg, Table::concept_, 3).kind, Resolution::valid);
  EXPECT_EQ(resolve_reference(reg, Table::concept_, std::nullopt).kind, Resolution::null);
  EXPECT_EQ(resolve_reference(reg, Table::concept_, 999).kind, Resolution::undefined);
  EXPECT_EQ(reg.max_id(Table::rawassertion), 1100);
}

TEST(Registry, ReferenceSummaryMatchesFixture) {
  auto t = load_dump(mini(), '\t');
  auto reg = IdRegistry::build(t);
  bool seen = false;
  for (const auto& r : summarize_references(t, reg)) {
    EXPECT_EQ(r.valid + r.null + r.undefined, t.size(r.from));
    if (r.from == Table::assertion && r.field == "best_raw_id") {
      seen = true;
      EXPECT_EQ(r.null, 1u);
      EXPECT_EQ(r.undefined, 1u);
    }
  }
  EXPECT_TRUE(seen);
}
