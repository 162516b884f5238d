#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vixsel/benefit.h"
#include "vixsel/cost_model.h"
#include "vixsel/design_space.h"

namespace vixsel {

enum class Family { kSimultaneous, kViewsOnly, kIndexesOnly };

// Views, then base indexes, then every (v, i) pair with VI[v][i] = 1, each in
// candidate order. The isolated families keep only their singletons.
std::vector<CandidateObject> enumerate_objects(const DesignSpace& space,
                                               Family family = Family::kSimultaneous);

// Bytes of the object's members not yet in the configuration.
std::uint64_t incremental_size(const CostModel& model, const CandidateObject& object,
                               const Configuration& config);

enum class StopReason { kNoPositiveObjective, kCandidatesExhausted, kBudgetExhausted };

std::string_view to_string(StopReason reason);

struct Iteration {
  std::string object;                 // id of the committed object
  std::vector<std::string> added;     // structures it contributed
  double objective = 0.0;             // F of the committed object
  double best_objective = 0.0;        // max F over all remaining objects
  std::uint64_t added_bytes = 0;
  std::int64_t remaining_budget = 0;  // after the commit
};

struct ObjectScore {
  std::string object;
  double objective = 0.0;
  std::uint64_t bytes = 0;  // incremental size
};

// Called once per round with every remaining object in ranking order.
using ScoreObserver =
    std::function<void(std::size_t round, const std::vector<ObjectScore>& ranking)>;

struct SelectionResult {
  Configuration config;
  std::vector<Iteration> iterations;
  StopReason stop_reason = StopReason::kCandidatesExhausted;
};

// Greedy loop over the given objects. Each round scores every remaining
// object against the current configuration and commits the best one with
// F > 0 whose incremental size fits the remaining budget; objects that do
// not fit are passed over for the next best. Ties on F go to the smaller
// incremental size, then to the smaller id. Throws InvalidBudget if
// budget < 0.
SelectionResult greedy_select(const CostModel& model,
                              std::span<const CandidateObject> objects,
                              std::int64_t budget, const ObjectiveParams& params,
                              const ScoreObserver& observer = {});

// Same, over enumerate_objects(space, family).
SelectionResult greedy_select(const CostModel& model, std::int64_t budget,
                              const ObjectiveParams& params,
                              Family family = Family::kSimultaneous);

}  // namespace vixsel
