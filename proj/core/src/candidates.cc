#include "vixsel/candidates.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "vixsel/errors.h"
#include "yaml_util.h"

namespace vixsel {

bool ViewCandidate::groups_by(const AttributeRef& attr) const {
  return std::find(group_by.begin(), group_by.end(), attr) != group_by.end();
}

bool ViewCandidate::has_aggregate(const Aggregate& agg) const {
  return std::find(aggregates.begin(), aggregates.end(), agg) != aggregates.end();
}

IndexCandidate index_on_view(const IndexCandidate& index, const ViewCandidate& view) {
  return IndexCandidate{view.id + "." + index.id, view.id, true, index.attribute};
}

std::size_t BoolMatrix::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

RelationSize estimate_view_size(const ViewCandidate& view,
                                const SchemaCatalog& catalog) {
  const std::uint64_t fact_rows = catalog.fact_table().row_count;
  std::uint64_t rows = 1;
  std::uint64_t width = 0;
  for (const AttributeRef& a : view.group_by) {
    const AttributeStats& stats = catalog.attribute(a);
    width += stats.width;
    // Saturate at the fact row count: the product can overflow.
    if (rows >= fact_rows || stats.cardinality > fact_rows / rows) {
      rows = fact_rows;
    } else {
      rows *= stats.cardinality;
    }
  }
  width += 8 * view.aggregates.size();
  return RelationSize{std::min(rows, fact_rows), std::max<std::uint64_t>(width, 1)};
}

namespace {

template <typename T>
void push_unique(std::vector<T>& items, const T& item) {
  if (std::find(items.begin(), items.end(), item) == items.end()) items.push_back(item);
}

}  // namespace

std::vector<ViewCandidate> generate_view_candidates(const Workload& workload,
                                                    const SchemaCatalog& catalog) {
  std::vector<ViewCandidate> views;
  std::map<std::set<std::string>, std::size_t> by_signature;
  for (const Query& q : workload.queries) {
    auto [it, inserted] = by_signature.try_emplace(q.joined_tables, views.size());
    if (inserted) {
      ViewCandidate v;
      v.id = "v" + std::to_string(views.size() + 1);
      v.joined_tables = q.joined_tables;
      views.push_back(std::move(v));
    }
    ViewCandidate& v = views[it->second];
    for (const JoinPair& j : q.join_pairs) push_unique(v.join_pairs, j);
    for (const AttributeRef& a : q.group_by) push_unique(v.group_by, a);
    for (const Predicate& p : q.predicates) push_unique(v.group_by, p.attribute);
    for (const Aggregate& a : q.aggregates) push_unique(v.aggregates, a);
  }
  for (ViewCandidate& v : views) {
    if (v.group_by.empty()) {
      // A query without grouping or filters still needs a grouping key; use
      // the fact foreign keys it joins through.
      for (const JoinPair& j : v.join_pairs) push_unique(v.group_by, j.fact);
    }
    v.stats = estimate_view_size(v, catalog);
  }
  // Views that still have no grouping key (fact-only queries with neither
  // filters nor grouping) cannot be materialized as aggregates.
  std::erase_if(views, [](const ViewCandidate& v) { return v.group_by.empty(); });
  for (std::size_t k = 0; k < views.size(); ++k) views[k].id = "v" + std::to_string(k + 1);
  return views;
}

std::vector<IndexCandidate> generate_index_candidates(const Workload& workload,
                                                      const SchemaCatalog& catalog,
                                                      std::size_t min_support) {
  if (min_support < 1) throw ValidationError("min_support must be >= 1");
  std::vector<AttributeRef> order;
  std::map<AttributeRef, std::size_t> support;
  for (const Query& q : workload.queries) {
    std::vector<AttributeRef> used;
    for (const Predicate& p : q.predicates) push_unique(used, p.attribute);
    for (const AttributeRef& a : q.group_by) push_unique(used, a);
    for (const AttributeRef& a : used) {
      if (support[a]++ == 0) order.push_back(a);
    }
  }
  std::vector<IndexCandidate> out;
  for (const AttributeRef& a : order) {
    if (support[a] < min_support) continue;
    catalog.attribute(a);
    out.push_back(IndexCandidate{"i" + std::to_string(out.size() + 1), a.table, false, a});
  }
  return out;
}

bool usable_view(const Query& q, const ViewCandidate& v) {
  const bool joins_cover =
      std::includes(v.joined_tables.begin(), v.joined_tables.end(),
                    q.joined_tables.begin(), q.joined_tables.end());
  if (!joins_cover) return false;
  for (const JoinPair& j : q.join_pairs) {
    if (std::find(v.join_pairs.begin(), v.join_pairs.end(), j) == v.join_pairs.end()) {
      return false;
    }
  }
  for (const AttributeRef& a : q.group_by) {
    if (!v.groups_by(a)) return false;
  }
  for (const Predicate& p : q.predicates) {
    if (!v.groups_by(p.attribute)) return false;
  }
  for (const Aggregate& a : q.aggregates) {
    if (!v.has_aggregate(a)) return false;
  }
  return true;
}

bool usable_index(const Query& q, const IndexCandidate& i) {
  return !i.on_view && q.joined_tables.contains(i.attribute.table) &&
         q.references(i.attribute);
}

bool view_supports_index(const ViewCandidate& v, const IndexCandidate& i) {
  return v.groups_by(i.attribute);
}

UsageMatrices build_matrices(const Workload& workload,
                             std::span<const ViewCandidate> views,
                             std::span<const IndexCandidate> indexes) {
  const std::size_t nq = workload.queries.size();
  UsageMatrices m{BoolMatrix(nq, views.size()), BoolMatrix(nq, indexes.size()),
                  BoolMatrix(views.size(), indexes.size())};
  for (std::size_t q = 0; q < nq; ++q) {
    const Query& query = workload.queries[q];
    for (std::size_t v = 0; v < views.size(); ++v) {
      m.qv.set(q, v, usable_view(query, views[v]));
    }
    for (std::size_t i = 0; i < indexes.size(); ++i) {
      m.qi.set(q, i, usable_index(query, indexes[i]));
    }
  }
  for (std::size_t v = 0; v < views.size(); ++v) {
    for (std::size_t i = 0; i < indexes.size(); ++i) {
      m.vi.set(v, i, view_supports_index(views[v], indexes[i]));
    }
  }
  return m;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

AttributeRef parse_attr(std::string_view text, const SchemaCatalog& catalog) {
  const std::string t = to_lower(trim(text));
  const auto dot = t.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == t.size() ||
      t.find('.', dot + 1) != std::string::npos) {
    throw ParseError("expected table.attribute, got '" + std::string(text) + "'");
  }
  AttributeRef ref{t.substr(0, dot), t.substr(dot + 1)};
  catalog.attribute(ref);
  return ref;
}

Aggregate parse_aggregate(std::string_view text, const SchemaCatalog& catalog) {
  const std::string t = to_lower(trim(text));
  if (t.size() < 6 || t.rfind("sum(", 0) != 0 || t.back() != ')') {
    throw ParseError("expected sum(measure), got '" + std::string(text) + "'");
  }
  const std::string inner = trim(std::string_view(t).substr(4, t.size() - 5));
  if (inner.find('.') == std::string::npos) {
    return Aggregate{AggregateFunction::kSum,
                     parse_attr(catalog.fact_table().name + "." + inner, catalog)};
  }
  return Aggregate{AggregateFunction::kSum, parse_attr(inner, catalog)};
}

std::vector<std::string> string_list(const YAML::Node& node, const char* key) {
  std::vector<std::string> out;
  const YAML::Node list = node[key];
  if (!list) return out;
  detail::require_sequence(list, key);
  for (const YAML::Node& item : list) out.push_back(item.as<std::string>());
  return out;
}

ViewCandidate parse_view(const YAML::Node& node, const SchemaCatalog& catalog) {
  detail::require_map(node, "view entry");
  detail::reject_unknown_keys(
      node, {"id", "tables", "joins", "group_by", "aggregates", "row_count"}, "view");
  ViewCandidate v;
  v.id = detail::required<std::string>(node, "id");
  for (const std::string& t : string_list(node, "tables")) {
    v.joined_tables.insert(catalog.table(to_lower(trim(t))).name);
  }
  const std::string where = "view '" + v.id + "'";
  if (!v.joined_tables.contains(catalog.fact_table().name)) {
    throw ValidationError(where + " does not join the fact table");
  }
  auto check_joined = [&](const AttributeRef& a) {
    if (!v.joined_tables.contains(a.table)) {
      throw ValidationError(where + ": " + a.str() + " is not on a joined table");
    }
  };
  for (const std::string& j : string_list(node, "joins")) {
    const auto eq = j.find('=');
    if (eq == std::string::npos) throw ParseError(where + ": join needs '='");
    AttributeRef lhs = parse_attr(std::string_view(j).substr(0, eq), catalog);
    AttributeRef rhs = parse_attr(std::string_view(j).substr(eq + 1), catalog);
    check_joined(lhs);
    check_joined(rhs);
    const bool lf = catalog.is_fact(lhs.table), rf = catalog.is_fact(rhs.table);
    if (lf == rf) throw ValidationError(where + ": join must link fact to dimension");
    push_unique(v.join_pairs, lf ? JoinPair{lhs, rhs} : JoinPair{rhs, lhs});
  }
  for (const std::string& g : string_list(node, "group_by")) {
    AttributeRef a = parse_attr(g, catalog);
    check_joined(a);
    push_unique(v.group_by, a);
  }
  if (v.group_by.empty()) throw ValidationError(where + ": group_by is empty");
  for (const std::string& a : string_list(node, "aggregates")) {
    Aggregate agg = parse_aggregate(a, catalog);
    check_joined(agg.measure);
    push_unique(v.aggregates, agg);
  }
  v.stats = estimate_view_size(v, catalog);
  if (node["row_count"]) {
    const std::int64_t rows = detail::required<std::int64_t>(node, "row_count");
    if (rows < 0 || static_cast<std::uint64_t>(rows) > catalog.fact_table().row_count) {
      throw ValidationError(where + ": row_count must be within [0, fact rows]");
    }
    v.stats.row_count = static_cast<std::uint64_t>(rows);
  }
  return v;
}

}  // namespace

CandidateSet load_candidates(std::string_view source, const SchemaCatalog& catalog) {
  const YAML::Node root = detail::parse_yaml(source);
  CandidateSet set;
  if (root.IsNull()) return set;
  detail::require_map(root, "candidates");
  detail::reject_unknown_keys(root, {"views", "indexes"}, "candidates");
  std::set<std::string> ids;
  auto claim = [&](const std::string& id) {
    if (id.empty()) throw ValidationError("candidate with empty id");
    if (!ids.insert(id).second) throw ValidationError("duplicate candidate id '" + id + "'");
  };
  if (const YAML::Node views = root["views"]; views && !views.IsNull()) {
    detail::require_sequence(views, "views");
    for (const YAML::Node& n : views) {
      set.views.push_back(parse_view(n, catalog));
      claim(set.views.back().id);
    }
  }
  if (const YAML::Node indexes = root["indexes"]; indexes && !indexes.IsNull()) {
    detail::require_sequence(indexes, "indexes");
    for (const YAML::Node& n : indexes) {
      detail::require_map(n, "index entry");
      detail::reject_unknown_keys(n, {"id", "attribute"}, "index");
      IndexCandidate i;
      i.id = detail::required<std::string>(n, "id");
      i.attribute = parse_attr(detail::required<std::string>(n, "attribute"), catalog);
      i.target = i.attribute.table;
      claim(i.id);
      set.indexes.push_back(std::move(i));
    }
  }
  return set;
}

CandidateSet load_candidates_file(const std::filesystem::path& path,
                                  const SchemaCatalog& catalog) {
  return load_candidates(read_file(path), catalog);
}

}  // namespace vixsel
