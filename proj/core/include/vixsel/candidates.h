#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vixsel/catalog.h"
#include "vixsel/workload.h"

namespace vixsel {

struct ViewCandidate {
  std::string id;
  std::set<std::string> joined_tables;
  std::vector<JoinPair> join_pairs;
  std::vector<AttributeRef> group_by;
  std::vector<Aggregate> aggregates;
  RelationSize stats;

  bool groups_by(const AttributeRef& attr) const;
  bool has_aggregate(const Aggregate& agg) const;
};

// Single-attribute B-tree. Base candidates target a table; an instance on a
// view (see index_on_view) targets the view and keeps the base column name.
struct IndexCandidate {
  std::string id;
  std::string target;
  bool on_view = false;
  AttributeRef attribute;
};

IndexCandidate index_on_view(const IndexCandidate& index, const ViewCandidate& view);

class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool value) { cells_[r * cols_ + c] = value; }
  std::size_t count() const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

// QV: queries x views, QI: queries x base indexes, VI: views x base indexes.
struct UsageMatrices {
  BoolMatrix qv;
  BoolMatrix qi;
  BoolMatrix vi;
};

// rows = min(fact rows, product of group-by cardinalities);
// width = sum of group-by widths + 8 bytes per aggregate.
RelationSize estimate_view_size(const ViewCandidate& view, const SchemaCatalog& catalog);

// One view per distinct joined-table signature, in order of first query.
// group_by = union of the group's grouping and predicate attributes;
// aggregates and join pairs are unioned too. Ids are v1..vk.
std::vector<ViewCandidate> generate_view_candidates(const Workload& workload,
                                                    const SchemaCatalog& catalog);

// Per-attribute support counting: an attribute filtered or grouped on by at
// least `min_support` queries becomes a base candidate, ordered by first
// occurrence (predicates before grouping within a query), ids i1..in.
// Indexes on views are the VI instances of these candidates.
std::vector<IndexCandidate> generate_index_candidates(const Workload& workload,
                                                      const SchemaCatalog& catalog,
                                                      std::size_t min_support);

// The view can answer the query: it joins every table the query joins (extra
// star joins through fact foreign keys are lossless), carries the query's
// join pairs, groups by every attribute the query groups or filters on, and
// stores every aggregate the query asks for.
bool usable_view(const Query& q, const ViewCandidate& v);

// The query filters or groups on the indexed column of a joined base table.
bool usable_index(const Query& q, const IndexCandidate& i);

// VI[v][i] holds when i's column is one of v's grouping attributes.
bool view_supports_index(const ViewCandidate& v, const IndexCandidate& i);

UsageMatrices build_matrices(const Workload& workload,
                             std::span<const ViewCandidate> views,
                             std::span<const IndexCandidate> indexes);

struct CandidateSet {
  std::vector<ViewCandidate> views;
  std::vector<IndexCandidate> indexes;
};

// Candidates file (YAML, same conventions as the catalog file):
//   views:   [{id, tables: [..], joins: ["f.a = d.b", ..],
//              group_by: [t.a, ..], aggregates: ["sum(t.m)", ..],
//              row_count: <optional override>}]
//   indexes: [{id, attribute: t.a}]
// View statistics are estimated from the catalog unless overridden.
CandidateSet load_candidates(std::string_view source, const SchemaCatalog& catalog);
CandidateSet load_candidates_file(const std::filesystem::path& path,
                                  const SchemaCatalog& catalog);

}  // namespace vixsel
