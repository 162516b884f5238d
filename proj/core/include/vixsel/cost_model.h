#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vixsel/catalog.h"
#include "vixsel/design_space.h"
#include "vixsel/structure.h"
#include "vixsel/workload.h"

namespace vixsel {

struct CostModelParams {
  double selectivity_floor = 1e-9;
};

// Uniform selectivity: 1 / cardinality, floored.
double selectivity(const Predicate& p, const SchemaCatalog& catalog,
                   const CostModelParams& params = {});

// Levels of a B-tree over `keys` distinct keys: the smallest h >= 1 with
// fanout^h >= keys.
std::uint32_t btree_height(std::uint64_t keys, std::uint32_t fanout);

// Bytes of a single-attribute B-tree over `target_rows` entries.
std::uint64_t index_size(std::uint64_t target_rows, std::uint32_t key_width,
                         const SchemaCatalog& catalog);

// How a query is answered under a selection.
struct Rewriting {
  bool uses_view = false;
  std::size_t view = 0;
  std::vector<Structure> indexes;  // index structures the plan reads

  std::string describe(const DesignSpace& space) const;
};

struct QueryCost {
  std::uint64_t blocks = 0;
  Rewriting rewriting;
};

struct CostReport {
  struct Entry {
    std::string query_id;
    std::uint64_t blocks = 0;
    std::string rewriting;
  };
  std::vector<Entry> per_query;  // workload order
  std::uint64_t total = 0;
};

// Block I/O model. A query costs the cheapest of:
//   base tables: per joined table, a full scan or h + ceil(sel * blocks) through
//     a selected index on a column the query filters or groups on;
//   a selected usable view: a scan of the view, or h + ceil(sel * blocks(view))
//     through a selected index on that view.
// `sel` is the product of the query's predicate selectivities on the indexed
// column (1 when the column is only grouped on). Join work beyond scans is
// not charged.
class CostModel {
 public:
  static constexpr std::string_view kVersion = "vixsel-blocks/1 (scan + btree)";

  explicit CostModel(const DesignSpace& space, CostModelParams params = {});

  const DesignSpace& space() const { return *space_; }
  const CostModelParams& params() const { return params_; }

  std::uint64_t table_blocks(std::string_view table) const;
  std::uint64_t view_blocks(std::size_t v) const { return view_blocks_[v]; }

  // taille(o) in bytes.
  std::uint64_t object_size(const Structure& s) const;
  // Blocks read and written to rebuild the structure after a refresh.
  std::uint64_t maintenance_cost(const Structure& s) const;

  QueryCost query_cost(std::size_t q, const Selection& selection) const;
  std::uint64_t query_blocks(std::size_t q, const Selection& selection) const;
  std::uint64_t total_cost(const Selection& selection) const;
  CostReport workload_cost(const Selection& selection) const;

 private:
  struct IndexAccess {
    std::size_t index;
    std::uint64_t blocks;  // h + ceil(sel * blocks(target))
  };
  struct TablePlan {
    std::uint64_t scan_blocks;
    std::vector<IndexAccess> indexes;
  };
  struct ViewPlan {
    std::size_t view;
    std::uint64_t scan_blocks;
    std::vector<IndexAccess> indexes;
  };
  struct QueryPlans {
    std::vector<TablePlan> tables;
    std::vector<ViewPlan> views;
  };

  QueryCost evaluate(std::size_t q, const Selection& selection, bool want_rewriting) const;

  const DesignSpace* space_;
  CostModelParams params_;
  std::vector<std::uint64_t> view_blocks_;
  std::vector<QueryPlans> plans_;
};

}  // namespace vixsel
