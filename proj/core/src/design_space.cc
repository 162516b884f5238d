#include "vixsel/design_space.h"

namespace vixsel {

DesignSpace DesignSpace::assemble(SchemaCatalog catalog, Workload workload,
                                  std::vector<ViewCandidate> views,
                                  std::vector<IndexCandidate> indexes) {
  UsageMatrices matrices = build_matrices(workload, views, indexes);
  return DesignSpace{std::move(catalog), std::move(workload), std::move(views),
                     std::move(indexes), std::move(matrices)};
}

DesignSpace DesignSpace::generate(SchemaCatalog catalog, Workload workload,
                                  std::size_t min_support) {
  std::vector<ViewCandidate> views = generate_view_candidates(workload, catalog);
  std::vector<IndexCandidate> indexes =
      generate_index_candidates(workload, catalog, min_support);
  return assemble(std::move(catalog), std::move(workload), std::move(views),
                  std::move(indexes));
}

}  // namespace vixsel
