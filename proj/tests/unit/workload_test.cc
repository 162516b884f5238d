#include <gtest/gtest.h>

#include <random>

#include "fixtures.h"
#include "random_instance.h"
#include "vixsel/errors.h"
#include "vixsel/workload.h"

namespace vixsel {
namespace {

SchemaCatalog sh() { return load_catalog_file(testing::fixture("sh_catalog.yaml")); }

TEST(Workload, ParsesFixture) {
  const SchemaCatalog c = sh();
  const Workload w = load_workload_file(testing::fixture("sh_workload.sql"), c);
  ASSERT_EQ(w.size(), 8u);
  EXPECT_EQ(w.refresh_ratio, 0.0);
  const Query& q1 = w.queries[0];
  EXPECT_EQ(q1.id, "q1");
  EXPECT_EQ(q1.joined_tables, (std::set<std::string>{"sales", "times"}));
  ASSERT_EQ(q1.join_pairs.size(), 1u);
  EXPECT_EQ(q1.join_pairs[0].fact, (AttributeRef{"sales", "time_id"}));
  ASSERT_EQ(q1.predicates.size(), 1u);
  EXPECT_EQ(q1.predicates[0].constant, "2000");
  EXPECT_FALSE(q1.predicates[0].quoted);
  ASSERT_EQ(q1.aggregates.size(), 1u);
  EXPECT_EQ(q1.aggregates[0].str(), "sum(sales.amount_sold)");
  EXPECT_EQ(q1.group_by, (std::vector<AttributeRef>{{"sales", "time_id"}}));

  const Query& q2 = w.queries[1];
  EXPECT_EQ(q2.predicates[0].constant, "news paper");
  EXPECT_TRUE(q2.predicates[0].quoted);
  EXPECT_TRUE(q2.references({"promotions", "promo_category"}));
  EXPECT_FALSE(q2.references({"products", "prod_name"}));
}

TEST(Workload, SingleQueryDefaults) {
  const Query q = parse_query(
      "SELECT channels.channel_desc, SUM(quantity_sold) FROM sales, channels "
      "WHERE sales.channel_id = channels.channel_id GROUP BY channels.channel_desc",
      sh());
  EXPECT_EQ(q.id, "q1");
  EXPECT_EQ(q.aggregates[0].measure, (AttributeRef{"sales", "quantity_sold"}));
  EXPECT_TRUE(q.predicates.empty());
}

TEST(Workload, Errors) {
  const SchemaCatalog c = sh();
  EXPECT_THROW(parse_query("select from sales", c), SyntaxError);
  EXPECT_THROW(parse_query("select x.y from nowhere", c), UnknownNameError);
  EXPECT_THROW(parse_query("select sales.nothing from sales", c), UnknownNameError);
  // Referencing a table that is not in FROM.
  EXPECT_THROW(parse_query("select times.time_id from sales", c), Error);
  try {
    load_workload("select sales.time_id from sales;\nselect from;", c);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_NE(std::string(e.what()).find("statement 2"), std::string::npos) << e.what();
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(load_workload("a: select sales.time_id from sales; a: select sales.time_id from sales;", c),
               ValidationError);
  EXPECT_THROW(load_workload("refresh_ratio = -1;", c), ValidationError);
}

TEST(Workload, RefreshRatioHeader) {
  const Workload w = load_workload("refresh_ratio = 0.25;\nselect sales.time_id from sales;", sh());
  EXPECT_DOUBLE_EQ(w.refresh_ratio, 0.25);
  EXPECT_EQ(w.size(), 1u);
}

TEST(Workload, QuotesSurviveRoundTrip) {
  const SchemaCatalog c = sh();
  const Query q = parse_query(
      "select sales.promo_id from sales, promotions where sales.promo_id = promotions.promo_id "
      "and promotions.promo_name = 'it''s on' group by sales.promo_id",
      c);
  EXPECT_EQ(q.predicates[0].constant, "it's on");
  EXPECT_EQ(parse_query(to_sql(q), c, q.id), q);
}

TEST(Workload, ToSqlRoundTripsFixture) {
  const SchemaCatalog c = sh();
  for (const Query& q : load_workload_file(testing::fixture("sh_workload.sql"), c).queries) {
    EXPECT_EQ(parse_query(to_sql(q), c, "x"), q) << to_sql(q);
  }
}

TEST(Workload, ToSqlRoundTripsRandomQueries) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const SchemaCatalog c = testing::random_catalog(rng, {});
    for (const Query& q : testing::random_workload(rng, c, {}).queries) {
      ASSERT_EQ(parse_query(to_sql(q), c, "x"), q) << to_sql(q);
    }
  }
}

}  // namespace
}  // namespace vixsel
