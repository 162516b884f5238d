#include "vixsel/cost_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vixsel {

std::string structure_id(const DesignSpace& space, const Structure& s) {
  switch (s.kind) {
    case StructureKind::kView:
      return space.views[s.view].id;
    case StructureKind::kBaseIndex:
      return space.indexes[s.index].id;
    case StructureKind::kViewIndex:
      return space.views[s.view].id + "." + space.indexes[s.index].id;
  }
  return {};
}

Selection::Selection(const DesignSpace& space)
    : Selection(space.view_count(), space.index_count()) {}

std::uint8_t& Selection::flag(const Structure& s) {
  switch (s.kind) {
    case StructureKind::kView:
      return views_[s.view];
    case StructureKind::kBaseIndex:
      return base_indexes_[s.index];
    case StructureKind::kViewIndex:
      break;
  }
  return view_indexes_[s.view * index_count_ + s.index];
}

bool Selection::contains(const Structure& s) const {
  switch (s.kind) {
    case StructureKind::kView:
      return has_view(s.view);
    case StructureKind::kBaseIndex:
      return has_base_index(s.index);
    case StructureKind::kViewIndex:
      break;
  }
  return has_view_index(s.view, s.index);
}

bool Selection::empty() const {
  auto none = [](const std::vector<std::uint8_t>& v) {
    return std::find(v.begin(), v.end(), 1) == v.end();
  };
  return none(views_) && none(base_indexes_) && none(view_indexes_);
}

std::vector<Structure> Selection::structures() const {
  std::vector<Structure> out;
  for (std::size_t v = 0; v < view_count_; ++v) {
    if (has_view(v)) out.push_back(Structure::of_view(v));
  }
  for (std::size_t i = 0; i < index_count_; ++i) {
    if (has_base_index(i)) out.push_back(Structure::of_base_index(i));
  }
  for (std::size_t v = 0; v < view_count_; ++v) {
    for (std::size_t i = 0; i < index_count_; ++i) {
      if (has_view_index(v, i)) out.push_back(Structure::of_view_index(v, i));
    }
  }
  return out;
}

double selectivity(const Predicate& p, const SchemaCatalog& catalog,
                   const CostModelParams& params) {
  const double card = static_cast<double>(catalog.attribute(p.attribute).cardinality);
  return std::max(1.0 / card, params.selectivity_floor);
}

std::uint32_t btree_height(std::uint64_t keys, std::uint32_t fanout) {
  std::uint32_t height = 1;
  // Capacity grows as fanout^height; stop before it can overflow.
  for (std::uint64_t capacity = fanout; capacity < keys; ++height) {
    if (capacity > std::numeric_limits<std::uint64_t>::max() / fanout) {
      return height + 1;
    }
    capacity *= fanout;
  }
  return height;
}

std::uint64_t index_size(std::uint64_t target_rows, std::uint32_t key_width,
                         const SchemaCatalog& catalog) {
  return target_rows * (static_cast<std::uint64_t>(key_width) + catalog.rowid_width());
}

std::string Rewriting::describe(const DesignSpace& space) const {
  std::string out = uses_view ? "view " + space.views[view].id : std::string("base");
  if (!indexes.empty()) {
    out += " + index ";
    for (std::size_t k = 0; k < indexes.size(); ++k) {
      if (k) out += ",";
      out += structure_id(space, indexes[k]);
    }
  }
  return out;
}

namespace {

std::uint64_t scaled_blocks(double sel, std::uint64_t blocks) {
  return static_cast<std::uint64_t>(std::ceil(sel * static_cast<double>(blocks)));
}

double access_selectivity(const Query& q, const AttributeRef& column,
                          const SchemaCatalog& catalog, const CostModelParams& params) {
  double sel = 1.0;
  for (const Predicate& p : q.predicates) {
    if (p.attribute == column) sel *= selectivity(p, catalog, params);
  }
  return sel;
}

}  // namespace

CostModel::CostModel(const DesignSpace& space, CostModelParams params)
    : space_(&space), params_(params) {
  const SchemaCatalog& catalog = space.catalog;
  view_blocks_.reserve(space.view_count());
  for (const ViewCandidate& v : space.views) view_blocks_.push_back(blocks(v.stats, catalog));

  plans_.resize(space.query_count());
  for (std::size_t q = 0; q < space.query_count(); ++q) {
    const Query& query = space.workload.queries[q];
    QueryPlans& plans = plans_[q];
    for (const std::string& table : query.joined_tables) {
      TablePlan plan{blocks(catalog.table(table), catalog), {}};
      for (std::size_t i = 0; i < space.index_count(); ++i) {
        const IndexCandidate& index = space.indexes[i];
        if (!space.matrices.qi(q, i) || index.attribute.table != table) continue;
        const double sel = access_selectivity(query, index.attribute, catalog, params_);
        const std::uint32_t h = btree_height(catalog.attribute(index.attribute).cardinality,
                                             catalog.btree_fanout());
        plan.indexes.push_back({i, h + scaled_blocks(sel, plan.scan_blocks)});
      }
      plans.tables.push_back(std::move(plan));
    }
    for (std::size_t v = 0; v < space.view_count(); ++v) {
      if (!space.matrices.qv(q, v)) continue;
      ViewPlan plan{v, view_blocks_[v], {}};
      const std::uint64_t view_rows = std::max<std::uint64_t>(space.views[v].stats.row_count, 1);
      for (std::size_t i = 0; i < space.index_count(); ++i) {
        if (!space.matrices.vi(v, i) || !space.matrices.qi(q, i)) continue;
        const AttributeRef& column = space.indexes[i].attribute;
        const double sel = access_selectivity(query, column, catalog, params_);
        const std::uint64_t keys =
            std::min(catalog.attribute(column).cardinality, view_rows);
        const std::uint32_t h = btree_height(keys, catalog.btree_fanout());
        plan.indexes.push_back({i, h + scaled_blocks(sel, plan.scan_blocks)});
      }
      plans.views.push_back(std::move(plan));
    }
  }
}

std::uint64_t CostModel::table_blocks(std::string_view table) const {
  return blocks(space_->catalog.table(table), space_->catalog);
}

std::uint64_t CostModel::object_size(const Structure& s) const {
  const DesignSpace& space = *space_;
  switch (s.kind) {
    case StructureKind::kView:
      return space.views[s.view].stats.bytes();
    case StructureKind::kBaseIndex: {
      const IndexCandidate& index = space.indexes[s.index];
      return index_size(space.catalog.table(index.attribute.table).row_count,
                        space.catalog.attribute(index.attribute).width, space.catalog);
    }
    case StructureKind::kViewIndex:
      break;
  }
  return index_size(space.views[s.view].stats.row_count,
                    space.catalog.attribute(space.indexes[s.index].attribute).width,
                    space.catalog);
}

std::uint64_t CostModel::maintenance_cost(const Structure& s) const {
  const DesignSpace& space = *space_;
  const std::uint64_t block = space.catalog.block_size();
  switch (s.kind) {
    case StructureKind::kView: {
      std::uint64_t cost = view_blocks_[s.view];
      for (const std::string& t : space.views[s.view].joined_tables) cost += table_blocks(t);
      return cost;
    }
    case StructureKind::kBaseIndex:
      return table_blocks(space.indexes[s.index].attribute.table) +
             (object_size(s) + block - 1) / block;
    case StructureKind::kViewIndex:
      break;
  }
  return view_blocks_[s.view] + (object_size(s) + block - 1) / block;
}

QueryCost CostModel::evaluate(std::size_t q, const Selection& selection,
                              bool want_rewriting) const {
  const QueryPlans& plans = plans_[q];
  QueryCost best;
  best.blocks = 0;
  for (const TablePlan& table : plans.tables) {
    std::uint64_t cheapest = table.scan_blocks;
    const IndexAccess* via = nullptr;
    for (const IndexAccess& access : table.indexes) {
      if (selection.has_base_index(access.index) && access.blocks < cheapest) {
        cheapest = access.blocks;
        via = &access;
      }
    }
    best.blocks += cheapest;
    if (want_rewriting && via != nullptr) {
      best.rewriting.indexes.push_back(Structure::of_base_index(via->index));
    }
  }
  for (const ViewPlan& view : plans.views) {
    if (!selection.has_view(view.view)) continue;
    std::uint64_t cheapest = view.scan_blocks;
    const IndexAccess* via = nullptr;
    for (const IndexAccess& access : view.indexes) {
      if (selection.has_view_index(view.view, access.index) && access.blocks < cheapest) {
        cheapest = access.blocks;
        via = &access;
      }
    }
    if (cheapest < best.blocks) {
      best.blocks = cheapest;
      if (want_rewriting) {
        best.rewriting = Rewriting{true, view.view, {}};
        if (via != nullptr) {
          best.rewriting.indexes.push_back(Structure::of_view_index(view.view, via->index));
        }
      }
    }
  }
  return best;
}

QueryCost CostModel::query_cost(std::size_t q, const Selection& selection) const {
  return evaluate(q, selection, true);
}

std::uint64_t CostModel::query_blocks(std::size_t q, const Selection& selection) const {
  return evaluate(q, selection, false).blocks;
}

std::uint64_t CostModel::total_cost(const Selection& selection) const {
  std::uint64_t total = 0;
  for (std::size_t q = 0; q < plans_.size(); ++q) total += query_blocks(q, selection);
  return total;
}

CostReport CostModel::workload_cost(const Selection& selection) const {
  CostReport report;
  for (std::size_t q = 0; q < plans_.size(); ++q) {
    QueryCost cost = query_cost(q, selection);
    report.per_query.push_back({space_->workload.queries[q].id, cost.blocks,
                                cost.rewriting.describe(*space_)});
    report.total += cost.blocks;
  }
  return report;
}

}  // namespace vixsel
