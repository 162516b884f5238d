#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "vixsel/benefit.h"
#include "vixsel/cost_model.h"
#include "vixsel/selector.h"

namespace vixsel {

// Workload cost plus the maintenance penalty: C(Q, sel) + beta * sum of
// C_maintenance over the selected structures.
double penalized_cost(const CostModel& model, const Selection& selection, double beta);

struct ExhaustiveResult {
  Configuration config;
  std::uint64_t workload_cost = 0;
  double penalized_cost = 0.0;
  std::size_t feasible_subsets = 0;
};

inline constexpr std::size_t kMaxExhaustiveObjects = 20;

// Tries every subset of `objects` whose structures fit in `budget` and keeps
// the one with the lowest penalized cost; ties go to fewer bytes, then to the
// lexicographically smaller list of structure ids. Throws TooManyObjects past
// kMaxExhaustiveObjects and InvalidBudget for a negative budget.
ExhaustiveResult exhaustive_select(const CostModel& model,
                                   std::span<const CandidateObject> objects,
                                   std::int64_t budget, const ObjectiveParams& params);

// Greedy selection restricted to views or to base indexes.
SelectionResult isolated_select(Family family, const CostModel& model,
                                std::int64_t budget, const ObjectiveParams& params);

}  // namespace vixsel
