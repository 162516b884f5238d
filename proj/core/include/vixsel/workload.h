#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vixsel/catalog.h"

namespace vixsel {

// `table.attribute = constant`. Dates and strings are opaque literals.
struct Predicate {
  AttributeRef attribute;
  std::string constant;
  bool quoted = false;  // literal was written as '...'

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

enum class AggregateFunction { kSum };

struct Aggregate {
  AggregateFunction function = AggregateFunction::kSum;
  AttributeRef measure;

  std::string str() const;

  friend auto operator<=>(const Aggregate&, const Aggregate&) = default;
  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

// Equi-join between a fact-table foreign key and a dimension attribute.
struct JoinPair {
  AttributeRef fact;
  AttributeRef dimension;

  friend auto operator<=>(const JoinPair&, const JoinPair&) = default;
  friend bool operator==(const JoinPair&, const JoinPair&) = default;
};

struct Query {
  std::string id;
  std::vector<AttributeRef> select_attrs;
  std::vector<Aggregate> aggregates;
  std::set<std::string> joined_tables;
  std::vector<JoinPair> join_pairs;
  std::vector<Predicate> predicates;
  std::vector<AttributeRef> group_by;

  // True if `attr` is filtered on or grouped by.
  bool references(const AttributeRef& attr) const;
  bool has_predicate_on(const AttributeRef& attr) const;

  friend bool operator==(const Query&, const Query&) = default;
};

struct Workload {
  std::vector<Query> queries;
  double refresh_ratio = 0.0;

  std::size_t size() const { return queries.size(); }
  const Query* find(std::string_view id) const;
};

// Grammar (keywords case-insensitive, identifiers folded to lower case):
//   query  := [ident ":"] "select" sel {"," sel} "from" name {"," name}
//             ["where" cond {"and" cond}] ["group" "by" qattr {"," qattr}]
//   sel    := qattr | "sum" "(" (name | qattr) ")"
//   cond   := qattr "=" (qattr | literal)
//   qattr  := name "." name
//   literal:= number | "'" text "'"
// Throws SyntaxError (with line/column) or UnknownNameError / ValidationError.
Query parse_query(std::string_view text, const SchemaCatalog& catalog,
                  std::string default_id = "q1");

// Statements separated by ';'. '#' starts a line comment. An optional leading
// `refresh_ratio = <real>` header sets Workload::refresh_ratio. Errors carry
// the 1-based statement index.
Workload load_workload(std::string_view source, const SchemaCatalog& catalog);
Workload load_workload_file(const std::filesystem::path& path,
                            const SchemaCatalog& catalog);

// Canonical text in the grammar above; parse_query(to_sql(q)) == q.
std::string to_sql(const Query& query);

}  // namespace vixsel
