#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vixsel/candidates.h"
#include "vixsel/catalog.h"
#include "vixsel/workload.h"

namespace vixsel {

// Everything the selector reasons about: the catalog, the workload Q, the
// candidate views V and base indexes I, and their usage matrices.
struct DesignSpace {
  SchemaCatalog catalog;
  Workload workload;
  std::vector<ViewCandidate> views;
  std::vector<IndexCandidate> indexes;
  UsageMatrices matrices;

  // Computes the matrices from the given candidates.
  static DesignSpace assemble(SchemaCatalog catalog, Workload workload,
                              std::vector<ViewCandidate> views,
                              std::vector<IndexCandidate> indexes);
  // Generates candidates from the workload first.
  static DesignSpace generate(SchemaCatalog catalog, Workload workload,
                              std::size_t min_support = 1);

  std::size_t query_count() const { return workload.queries.size(); }
  std::size_t view_count() const { return views.size(); }
  std::size_t index_count() const { return indexes.size(); }
};

}  // namespace vixsel
