#include "vixsel/catalog.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "vixsel/errors.h"
#include "yaml_util.h"

namespace vixsel {

std::string_view to_string(TableKind kind) {
  return kind == TableKind::kFact ? "fact" : "dimension";
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

const AttributeStats* TableStats::find_attribute(
    std::string_view attribute) const {
  auto it = std::find_if(attributes.begin(), attributes.end(),
                         [&](const AttributeStats& a) { return a.name == attribute; });
  return it == attributes.end() ? nullptr : &*it;
}

SchemaCatalog::SchemaCatalog(std::vector<TableStats> tables,
                             std::uint32_t block_size,
                             std::uint32_t btree_fanout,
                             std::uint32_t rowid_width)
    : tables_(std::move(tables)),
      block_size_(block_size),
      btree_fanout_(btree_fanout),
      rowid_width_(rowid_width) {
  if (block_size_ < 512) {
    throw ValidationError("block_size must be at least 512 bytes, got " +
                          std::to_string(block_size_));
  }
  if (btree_fanout_ < 2) {
    throw ValidationError("btree_fanout must be at least 2, got " +
                          std::to_string(btree_fanout_));
  }
  if (rowid_width_ < 1) {
    throw ValidationError("rowid_width must be positive");
  }

  std::size_t fact_count = 0;
  std::set<std::string> table_names;
  for (std::size_t t = 0; t < tables_.size(); ++t) {
    const TableStats& table = tables_[t];
    if (table.name.empty()) throw ValidationError("table with empty name");
    if (!table_names.insert(table.name).second) {
      throw ValidationError("duplicate table '" + table.name + "'");
    }
    if (table.kind == TableKind::kFact) {
      ++fact_count;
      fact_index_ = t;
    }
    if (table.row_width < 1) {
      throw ValidationError("table '" + table.name + "': row_width must be >= 1");
    }
    std::set<std::string> attribute_names;
    for (const AttributeStats& attr : table.attributes) {
      const std::string where = "attribute '" + table.name + "." + attr.name + "'";
      if (attr.name.empty()) {
        throw ValidationError("table '" + table.name + "': attribute with empty name");
      }
      if (!attribute_names.insert(attr.name).second) {
        throw ValidationError("duplicate " + where);
      }
      if (attr.cardinality < 1) {
        throw ValidationError(where + ": cardinality must be >= 1");
      }
      if (table.row_count > 0 && attr.cardinality > table.row_count) {
        throw ValidationError(where + ": cardinality " +
                              std::to_string(attr.cardinality) +
                              " exceeds row_count " +
                              std::to_string(table.row_count));
      }
      if (attr.width < 1) throw ValidationError(where + ": width must be >= 1");
    }
  }
  if (fact_count != 1) {
    throw ValidationError("catalog must contain exactly one fact table, found " +
                          std::to_string(fact_count));
  }
}

const TableStats* SchemaCatalog::find_table(std::string_view name) const {
  auto it = std::find_if(tables_.begin(), tables_.end(),
                         [&](const TableStats& t) { return t.name == name; });
  return it == tables_.end() ? nullptr : &*it;
}

const TableStats& SchemaCatalog::table(std::string_view name) const {
  const TableStats* t = find_table(name);
  if (t == nullptr) {
    throw UnknownNameError("unknown table '" + std::string(name) + "'");
  }
  return *t;
}

const AttributeStats& SchemaCatalog::attribute(const AttributeRef& ref) const {
  const AttributeStats* a = table(ref.table).find_attribute(ref.attribute);
  if (a == nullptr) {
    throw UnknownNameError("unknown attribute '" + ref.str() + "'");
  }
  return *a;
}

std::uint64_t blocks(const RelationSize& relation, const SchemaCatalog& catalog) {
  const std::uint64_t bytes = relation.row_count * relation.row_width;
  const std::uint64_t block = catalog.block_size();
  return (bytes + block - 1) / block;
}

std::uint64_t blocks(const TableStats& table, const SchemaCatalog& catalog) {
  return blocks(RelationSize{table.row_count, table.row_width}, catalog);
}

namespace {

TableStats parse_table(const YAML::Node& node) {
  detail::require_map(node, "table entry");
  detail::reject_unknown_keys(
      node, {"name", "kind", "row_count", "row_width", "attributes"}, "table");
  TableStats table;
  table.name = to_lower(detail::required<std::string>(node, "name"));
  const std::string kind = to_lower(detail::required<std::string>(node, "kind"));
  if (kind == "fact") {
    table.kind = TableKind::kFact;
  } else if (kind == "dimension") {
    table.kind = TableKind::kDimension;
  } else {
    throw ParseError("table '" + table.name + "': kind must be fact or dimension");
  }
  const std::int64_t rows = detail::required<std::int64_t>(node, "row_count");
  const std::int64_t width = detail::required<std::int64_t>(node, "row_width");
  if (rows < 0) {
    throw ValidationError("table '" + table.name + "': row_count must be >= 0");
  }
  if (width < 1 || width > UINT32_MAX) {
    throw ValidationError("table '" + table.name + "': row_width must be >= 1");
  }
  table.row_count = static_cast<std::uint64_t>(rows);
  table.row_width = static_cast<std::uint32_t>(width);

  if (const YAML::Node attrs = node["attributes"]) {
    detail::require_sequence(attrs, "attributes");
    for (const YAML::Node& a : attrs) {
      detail::require_map(a, "attribute entry");
      detail::reject_unknown_keys(a, {"name", "cardinality", "width"}, "attribute");
      AttributeStats attr;
      attr.name = to_lower(detail::required<std::string>(a, "name"));
      const std::int64_t card = detail::required<std::int64_t>(a, "cardinality");
      const std::int64_t w = detail::required<std::int64_t>(a, "width");
      if (card < 1) {
        throw ValidationError("attribute '" + table.name + "." + attr.name +
                              "': cardinality must be >= 1");
      }
      if (w < 1 || w > UINT32_MAX) {
        throw ValidationError("attribute '" + table.name + "." + attr.name +
                              "': width must be >= 1");
      }
      attr.cardinality = static_cast<std::uint64_t>(card);
      attr.width = static_cast<std::uint32_t>(w);
      table.attributes.push_back(std::move(attr));
    }
  }
  return table;
}

std::uint32_t optional_u32(const YAML::Node& root, const char* key,
                           std::uint32_t fallback) {
  if (!root[key]) return fallback;
  const std::int64_t v = detail::required<std::int64_t>(root, key);
  if (v < 0 || v > UINT32_MAX) {
    throw ValidationError(std::string(key) + " out of range");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

SchemaCatalog load_catalog(std::string_view source) {
  const YAML::Node root = detail::parse_yaml(source);
  if (root.IsNull()) throw ValidationError("empty catalog: no fact table");
  detail::require_map(root, "catalog");
  detail::reject_unknown_keys(
      root, {"block_size", "btree_fanout", "rowid_width", "tables"}, "catalog");

  std::vector<TableStats> tables;
  if (const YAML::Node list = root["tables"]) {
    if (!list.IsNull()) {
      detail::require_sequence(list, "tables");
      for (const YAML::Node& t : list) tables.push_back(parse_table(t));
    }
  }
  return SchemaCatalog(
      std::move(tables),
      optional_u32(root, "block_size", SchemaCatalog::kDefaultBlockSize),
      optional_u32(root, "btree_fanout", SchemaCatalog::kDefaultFanout),
      optional_u32(root, "rowid_width", SchemaCatalog::kDefaultRowidWidth));
}

SchemaCatalog load_catalog_file(const std::filesystem::path& path) {
  return load_catalog(read_file(path));
}

std::string save_catalog(const SchemaCatalog& catalog) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "block_size" << YAML::Value << catalog.block_size();
  out << YAML::Key << "btree_fanout" << YAML::Value << catalog.btree_fanout();
  out << YAML::Key << "rowid_width" << YAML::Value << catalog.rowid_width();
  out << YAML::Key << "tables" << YAML::Value << YAML::BeginSeq;
  for (const TableStats& t : catalog.tables()) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << t.name;
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(t.kind));
    out << YAML::Key << "row_count" << YAML::Value << t.row_count;
    out << YAML::Key << "row_width" << YAML::Value << t.row_width;
    out << YAML::Key << "attributes" << YAML::Value << YAML::BeginSeq;
    for (const AttributeStats& a : t.attributes) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "name" << YAML::Value << a.name;
      out << YAML::Key << "cardinality" << YAML::Value << a.cardinality;
      out << YAML::Key << "width" << YAML::Value << a.width;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace vixsel
