#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.h"
#include "vixsel/catalog.h"
#include "vixsel/errors.h"

namespace vixsel {
namespace {

SchemaCatalog tiny() {
  return SchemaCatalog({{"f", TableKind::kFact, 1000, 20, {{"d_id", 10, 4}, {"m", 50, 8}}},
                        {"d", TableKind::kDimension, 10, 30, {{"id", 10, 4}, {"a", 3, 6}}}});
}

TEST(Catalog, BlocksRoundUp) {
  const SchemaCatalog c = tiny();
  EXPECT_EQ(blocks(c.table("f"), c), 3u);  // 20000 / 8192
  EXPECT_EQ(blocks(c.table("d"), c), 1u);
  EXPECT_EQ(blocks(RelationSize{0, 10}, c), 0u);
  EXPECT_EQ(blocks(RelationSize{8192, 1}, c), 1u);
  EXPECT_EQ(blocks(RelationSize{8193, 1}, c), 2u);
}

TEST(Catalog, Lookup) {
  const SchemaCatalog c = tiny();
  EXPECT_EQ(c.fact_table().name, "f");
  EXPECT_TRUE(c.is_fact("f"));
  EXPECT_FALSE(c.is_fact("d"));
  EXPECT_EQ(c.attribute({"d", "a"}).cardinality, 3u);
  EXPECT_EQ(c.find_table("nope"), nullptr);
  EXPECT_THROW(c.table("nope"), UnknownNameError);
  EXPECT_THROW(c.attribute({"d", "zz"}), UnknownNameError);
}

TEST(Catalog, RejectsBadShapes) {
  EXPECT_THROW(SchemaCatalog({}), ValidationError);
  EXPECT_THROW(SchemaCatalog({{"d", TableKind::kDimension, 1, 1, {}}}), ValidationError);
  EXPECT_THROW(SchemaCatalog({{"f", TableKind::kFact, 1, 1, {}},
                              {"g", TableKind::kFact, 1, 1, {}}}),
               ValidationError);
  EXPECT_THROW(SchemaCatalog({{"f", TableKind::kFact, 1, 1, {}},
                              {"f", TableKind::kDimension, 1, 1, {}}}),
               ValidationError);
  EXPECT_THROW(SchemaCatalog({{"f", TableKind::kFact, 5, 1, {{"a", 6, 1}}}}), ValidationError);
  EXPECT_THROW(SchemaCatalog({{"f", TableKind::kFact, 5, 1, {{"a", 2, 1}, {"a", 2, 1}}}}),
               ValidationError);
  EXPECT_THROW(SchemaCatalog({{"f", TableKind::kFact, 5, 1, {}}}, 256), ValidationError);
  EXPECT_THROW(SchemaCatalog({{"f", TableKind::kFact, 5, 1, {}}}, 8192, 1), ValidationError);
}

TEST(CatalogFile, LoadsAndRoundTrips) {
  const SchemaCatalog c = load_catalog_file(testing::fixture("sh_catalog.yaml"));
  EXPECT_EQ(c.tables().size(), 6u);
  EXPECT_EQ(c.fact_table().row_count, 16'260'336u);
  const SchemaCatalog again = load_catalog(save_catalog(c));
  EXPECT_EQ(again.tables(), c.tables());
  EXPECT_EQ(again.block_size(), c.block_size());
  EXPECT_EQ(again.btree_fanout(), c.btree_fanout());
  EXPECT_EQ(again.rowid_width(), c.rowid_width());
}

// Row counts and sizes in MiB of the measured warehouse.
TEST(CatalogFile, FixtureMatchesMeasuredSizes) {
  const SchemaCatalog c = load_catalog_file(testing::fixture("sh_catalog.yaml"));
  const struct {
    const char* table;
    std::uint64_t rows;
    double mib;
  } expected[] = {{"sales", 16'260'336, 372.17}, {"customers", 50'000, 6.67},
                  {"products", 10'000, 2.28},    {"times", 1'461, 0.20},
                  {"promotions", 501, 0.04},     {"channels", 5, 0.0001}};
  for (const auto& e : expected) {
    const TableStats& t = c.table(e.table);
    EXPECT_EQ(t.row_count, e.rows) << e.table;
    const double mib = static_cast<double>(t.row_count * t.row_width) / 1048576.0;
    // Widths are whole bytes, so allow half a byte per row of slack.
    EXPECT_NEAR(mib, e.mib, 0.5 * static_cast<double>(t.row_count) / 1048576.0 + 0.005)
        << e.table;
  }
}

TEST(CatalogFile, ParseErrors) {
  EXPECT_THROW(load_catalog(""), ValidationError);
  EXPECT_THROW(load_catalog("tables: [{name: f, kind: fact, row_count: 1}]"), ParseError);
  EXPECT_THROW(load_catalog("tables: [{name: f, kind: cube, row_count: 1, row_width: 1}]"),
               ParseError);
  EXPECT_THROW(load_catalog("colour: blue\ntables: []"), ParseError);
  EXPECT_THROW(load_catalog("tables: [{name: f"), ParseError);
  EXPECT_THROW(load_catalog("tables: [{name: f, kind: fact, row_count: -1, row_width: 1}]"),
               ValidationError);
  EXPECT_THROW(load_catalog_file("/nonexistent/catalog.yaml"), ParseError);
}

TEST(CatalogFile, NamesFoldToLowerCase) {
  const SchemaCatalog c = load_catalog(
      "tables:\n"
      "  - {name: Sales, kind: FACT, row_count: 10, row_width: 8,\n"
      "     attributes: [{name: Amount, cardinality: 3, width: 4}]}\n");
  EXPECT_EQ(c.fact_table().name, "sales");
  EXPECT_EQ(c.attribute({"sales", "amount"}).cardinality, 3u);
}


TEST(Catalog, BlocksMonotoneInRowsAndWidth) {
  const SchemaCatalog c = tiny();
  std::mt19937_64 rng(1);
  for (int k = 0; k < 2000; ++k) {
    const std::uint64_t rows = rng() % 10'000'000, width = 1 + rng() % 500;
    const std::uint64_t b = blocks(RelationSize{rows, width}, c);
    ASSERT_LE(b, blocks(RelationSize{rows + 1 + rng() % 1000, width}, c));
    ASSERT_LE(b, blocks(RelationSize{rows, width + 1 + rng() % 50}, c));
  }
}

}  // namespace
}  // namespace vixsel
