#include "cost_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace vixsel::testing {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

std::uint64_t height(std::uint64_t keys, std::uint64_t fanout) {
  // Smallest h >= 1 with fanout^h >= keys, by repeated division.
  std::uint64_t h = 1;
  std::uint64_t left = ceil_div(keys, fanout);
  while (left > 1) {
    left = ceil_div(left, fanout);
    ++h;
  }
  return h;
}

double sel_on(const Query& q, const AttributeRef& col, const SchemaCatalog& catalog) {
  double s = 1.0;
  for (const Predicate& p : q.predicates) {
    if (p.attribute == col) {
      s *= std::max(1.0 / static_cast<double>(catalog.attribute(col).cardinality), 1e-9);
    }
  }
  return s;
}

bool query_touches(const Query& q, const AttributeRef& col) {
  const bool filtered = std::any_of(q.predicates.begin(), q.predicates.end(),
                                    [&](const Predicate& p) { return p.attribute == col; });
  const bool grouped = std::find(q.group_by.begin(), q.group_by.end(), col) != q.group_by.end();
  return filtered || grouped;
}

template <typename T>
bool contains(const std::vector<T>& items, const T& x) {
  return std::find(items.begin(), items.end(), x) != items.end();
}

}  // namespace

bool oracle_view_answers(const Query& q, const ViewCandidate& v) {
  for (const std::string& t : q.joined_tables) {
    if (!v.joined_tables.contains(t)) return false;
  }
  for (const JoinPair& j : q.join_pairs) {
    if (!contains(v.join_pairs, j)) return false;
  }
  for (const AttributeRef& g : q.group_by) {
    if (!contains(v.group_by, g)) return false;
  }
  for (const Predicate& p : q.predicates) {
    if (!contains(v.group_by, p.attribute)) return false;
  }
  for (const Aggregate& a : q.aggregates) {
    if (!contains(v.aggregates, a)) return false;
  }
  return true;
}

std::uint64_t oracle_query_cost(const DesignSpace& space, std::size_t q,
                                const Selection& selection) {
  const SchemaCatalog& cat = space.catalog;
  const Query& query = space.workload.queries[q];
  const std::uint64_t block = cat.block_size();

  // Options per joined table: scan, or any selected index the query can use.
  std::vector<std::vector<std::uint64_t>> options;
  for (const std::string& t : query.joined_tables) {
    const TableStats& table = cat.table(t);
    const std::uint64_t blocks = ceil_div(table.row_count * table.row_width, block);
    std::vector<std::uint64_t> opts{blocks};
    for (std::size_t i = 0; i < space.index_count(); ++i) {
      const IndexCandidate& idx = space.indexes[i];
      if (!selection.has_base_index(i) || idx.attribute.table != t) continue;
      if (!query_touches(query, idx.attribute)) continue;
      const double s = sel_on(query, idx.attribute, cat);
      opts.push_back(height(cat.attribute(idx.attribute).cardinality, cat.btree_fanout()) +
                     static_cast<std::uint64_t>(std::ceil(s * static_cast<double>(blocks))));
    }
    options.push_back(std::move(opts));
  }

  // Walk the cartesian product of per-table choices.
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < options.size(); ++k) sum += options[k][pick[k]];
    best = std::min(best, sum);
    std::size_t k = 0;
    while (k < options.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == options.size()) break;
  }

  for (std::size_t v = 0; v < space.view_count(); ++v) {
    const ViewCandidate& view = space.views[v];
    if (!selection.has_view(v) || !oracle_view_answers(query, view)) continue;
    const std::uint64_t blocks = ceil_div(view.stats.row_count * view.stats.row_width, block);
    best = std::min(best, blocks);
    for (std::size_t i = 0; i < space.index_count(); ++i) {
      const AttributeRef& col = space.indexes[i].attribute;
      if (!selection.has_view_index(v, i) || !contains(view.group_by, col)) continue;
      if (!query_touches(query, col)) continue;
      const std::uint64_t keys =
          std::min(cat.attribute(col).cardinality, std::max<std::uint64_t>(view.stats.row_count, 1));
      const double s = sel_on(query, col, cat);
      best = std::min(best, height(keys, cat.btree_fanout()) +
                                static_cast<std::uint64_t>(std::ceil(s * static_cast<double>(blocks))));
    }
  }
  return best;
}

std::uint64_t oracle_workload_cost(const DesignSpace& space, const Selection& selection) {
  std::uint64_t total = 0;
  for (std::size_t q = 0; q < space.query_count(); ++q) {
    total += oracle_query_cost(space, q, selection);
  }
  return total;
}

}  // namespace vixsel::testing
