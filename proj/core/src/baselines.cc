#include "vixsel/baselines.h"

#include <string>
#include <vector>

#include "vixsel/errors.h"

namespace vixsel {

double penalized_cost(const CostModel& model, const Selection& selection, double beta) {
  const double workload = static_cast<double>(model.total_cost(selection));
  if (beta == 0.0) return workload;
  std::uint64_t maintenance = 0;
  for (const Structure& s : selection.structures()) maintenance += model.maintenance_cost(s);
  return workload + beta * static_cast<double>(maintenance);
}

ExhaustiveResult exhaustive_select(const CostModel& model,
                                   std::span<const CandidateObject> objects,
                                   std::int64_t budget, const ObjectiveParams& params) {
  if (objects.size() > kMaxExhaustiveObjects) {
    throw TooManyObjects("exhaustive selection supports at most " +
                         std::to_string(kMaxExhaustiveObjects) + " objects, got " +
                         std::to_string(objects.size()));
  }
  if (budget < 0) {
    throw InvalidBudget("storage budget must be >= 0, got " + std::to_string(budget));
  }
  const DesignSpace& space = model.space();
  const double b = beta(params, space);

  bool have_best = false;
  Selection best;
  double best_cost = 0.0;
  std::uint64_t best_bytes = 0;
  std::vector<std::string> best_ids;
  std::size_t feasible = 0;

  const std::uint64_t subsets = std::uint64_t{1} << objects.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    Selection selection(space);
    for (std::size_t k = 0; k < objects.size(); ++k) {
      if ((mask >> k) & 1U) {
        for (const Structure& s : objects[k].members()) selection.insert(s);
      }
    }
    const std::vector<Structure> structures = selection.structures();
    std::uint64_t bytes = 0;
    for (const Structure& s : structures) bytes += model.object_size(s);
    if (bytes > static_cast<std::uint64_t>(budget)) continue;
    ++feasible;

    const double cost = penalized_cost(model, selection, b);
    bool better = !have_best || cost < best_cost;
    if (have_best && cost == best_cost) {
      if (bytes != best_bytes) {
        better = bytes < best_bytes;
      } else {
        std::vector<std::string> ids;
        for (const Structure& s : structures) ids.push_back(structure_id(space, s));
        better = ids < best_ids;
      }
    }
    if (better) {
      have_best = true;
      best = selection;
      best_cost = cost;
      best_bytes = bytes;
      best_ids.clear();
      for (const Structure& s : structures) best_ids.push_back(structure_id(space, s));
    }
  }

  ExhaustiveResult result{Configuration(space), 0, 0.0, feasible};
  // Canonical order puts views before their indexes.
  for (const Structure& s : best.structures()) result.config.add(s, model);
  result.workload_cost = model.total_cost(result.config.selection());
  result.penalized_cost = best_cost;
  return result;
}

SelectionResult isolated_select(Family family, const CostModel& model,
                                std::int64_t budget, const ObjectiveParams& params) {
  if (family == Family::kSimultaneous) {
    throw ValidationError("isolated selection needs the views-only or indexes-only family");
  }
  return greedy_select(model, budget, params, family);
}

}  // namespace vixsel
