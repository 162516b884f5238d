#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vixsel {

enum class TableKind { kFact, kDimension };

std::string_view to_string(TableKind kind);

// A fully qualified column reference, `table.attribute`.
struct AttributeRef {
  std::string table;
  std::string attribute;

  std::string str() const { return table + "." + attribute; }

  friend auto operator<=>(const AttributeRef&, const AttributeRef&) = default;
  friend bool operator==(const AttributeRef&, const AttributeRef&) = default;
};

struct AttributeStats {
  std::string name;
  std::uint64_t cardinality = 1;
  std::uint32_t width = 4;

  friend bool operator==(const AttributeStats&, const AttributeStats&) = default;
};

struct TableStats {
  std::string name;
  TableKind kind = TableKind::kDimension;
  std::uint64_t row_count = 0;
  std::uint32_t row_width = 1;
  std::vector<AttributeStats> attributes;

  const AttributeStats* find_attribute(std::string_view attribute) const;

  friend bool operator==(const TableStats&, const TableStats&) = default;
};

// Row count and width of anything stored as a relation: a base table or a
// materialized view.
struct RelationSize {
  std::uint64_t row_count = 0;
  std::uint64_t row_width = 1;

  std::uint64_t bytes() const { return row_count * row_width; }

  friend bool operator==(const RelationSize&, const RelationSize&) = default;
};

// Star-schema description plus the physical constants every cost formula
// reads. Immutable once constructed; the constructor enforces all invariants
// and throws ValidationError otherwise.
class SchemaCatalog {
 public:
  static constexpr std::uint32_t kDefaultBlockSize = 8192;
  static constexpr std::uint32_t kDefaultFanout = 200;
  static constexpr std::uint32_t kDefaultRowidWidth = 10;

  explicit SchemaCatalog(std::vector<TableStats> tables,
                         std::uint32_t block_size = kDefaultBlockSize,
                         std::uint32_t btree_fanout = kDefaultFanout,
                         std::uint32_t rowid_width = kDefaultRowidWidth);

  const std::vector<TableStats>& tables() const { return tables_; }
  std::uint32_t block_size() const { return block_size_; }
  std::uint32_t btree_fanout() const { return btree_fanout_; }
  std::uint32_t rowid_width() const { return rowid_width_; }

  const TableStats& fact_table() const { return tables_[fact_index_]; }
  bool is_fact(std::string_view table) const {
    return table == fact_table().name;
  }

  const TableStats* find_table(std::string_view name) const;
  // Throw UnknownNameError when absent.
  const TableStats& table(std::string_view name) const;
  const AttributeStats& attribute(const AttributeRef& ref) const;

  friend bool operator==(const SchemaCatalog&, const SchemaCatalog&) = default;

 private:
  std::vector<TableStats> tables_;
  std::uint32_t block_size_;
  std::uint32_t btree_fanout_;
  std::uint32_t rowid_width_;
  std::size_t fact_index_ = 0;
};

// ceil(row_count * row_width / block_size).
std::uint64_t blocks(const RelationSize& relation, const SchemaCatalog& catalog);
std::uint64_t blocks(const TableStats& table, const SchemaCatalog& catalog);

// Catalog file (YAML). Top-level keys `block_size`, `btree_fanout`,
// `rowid_width` (all optional) and `tables`, a list of
//   {name, kind: fact|dimension, row_count, row_width,
//    attributes: [{name, cardinality, width}, ...]}
// Identifiers are folded to lower case.
SchemaCatalog load_catalog(std::string_view source);
SchemaCatalog load_catalog_file(const std::filesystem::path& path);
std::string save_catalog(const SchemaCatalog& catalog);

// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

std::string to_lower(std::string_view text);

}  // namespace vixsel
