#include "fixtures.h"

namespace vixsel::testing {

DesignSpace fixture_space(bool scaled) {
  SchemaCatalog catalog =
      load_catalog_file(fixture(scaled ? "sh_catalog_scaled.yaml" : "sh_catalog.yaml"));
  Workload workload = load_workload_file(fixture("sh_workload.sql"), catalog);
  CandidateSet c = load_candidates_file(fixture("sh_candidates.yaml"), catalog);
  return DesignSpace::assemble(std::move(catalog), std::move(workload), std::move(c.views),
                               std::move(c.indexes));
}

}  // namespace vixsel::testing
