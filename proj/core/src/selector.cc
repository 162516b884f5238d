#include "vixsel/selector.h"

#include <algorithm>

#include "vixsel/errors.h"

namespace vixsel {

std::vector<CandidateObject> enumerate_objects(const DesignSpace& space, Family family) {
  std::vector<CandidateObject> out;
  if (family != Family::kIndexesOnly) {
    for (std::size_t v = 0; v < space.view_count(); ++v) {
      out.push_back(CandidateObject::of_view(space, v));
    }
  }
  if (family != Family::kViewsOnly) {
    for (std::size_t i = 0; i < space.index_count(); ++i) {
      out.push_back(CandidateObject::of_index(space, i));
    }
  }
  if (family == Family::kSimultaneous) {
    for (std::size_t v = 0; v < space.view_count(); ++v) {
      for (std::size_t i = 0; i < space.index_count(); ++i) {
        if (space.matrices.vi(v, i)) out.push_back(CandidateObject::composite(space, v, i));
      }
    }
  }
  return out;
}

std::uint64_t incremental_size(const CostModel& model, const CandidateObject& object,
                               const Configuration& config) {
  std::uint64_t bytes = 0;
  for (const Structure& s : object.members()) {
    if (!config.contains(s)) bytes += model.object_size(s);
  }
  return bytes;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kNoPositiveObjective:
      return "no_positive_F";
    case StopReason::kCandidatesExhausted:
      return "candidates_exhausted";
    case StopReason::kBudgetExhausted:
      break;
  }
  return "budget_exhausted";
}

namespace {

struct Scored {
  std::size_t object;
  double objective;
  std::uint64_t bytes;
};

}  // namespace

SelectionResult greedy_select(const CostModel& model,
                              std::span<const CandidateObject> objects,
                              std::int64_t budget, const ObjectiveParams& params,
                              const ScoreObserver& observer) {
  if (budget < 0) {
    throw InvalidBudget("storage budget must be >= 0, got " + std::to_string(budget));
  }
  const DesignSpace& space = model.space();
  SelectionResult result{Configuration(space), {}, StopReason::kCandidatesExhausted};
  std::int64_t remaining = budget;

  while (true) {
    if (remaining <= 0) {
      result.stop_reason = StopReason::kBudgetExhausted;
      break;
    }
    std::vector<Scored> scored;
    for (std::size_t k = 0; k < objects.size(); ++k) {
      if (result.config.contains_all(objects[k])) continue;
      scored.push_back({k, objective(model, result.config, objects[k], params),
                        incremental_size(model, objects[k], result.config)});
    }
    if (scored.empty()) {
      result.stop_reason = StopReason::kCandidatesExhausted;
      break;
    }
    std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
      if (a.objective != b.objective) return a.objective > b.objective;
      if (a.bytes != b.bytes) return a.bytes < b.bytes;
      return objects[a.object].id < objects[b.object].id;
    });
    if (observer) {
      std::vector<ObjectScore> ranking;
      ranking.reserve(scored.size());
      for (const Scored& s : scored) {
        ranking.push_back({objects[s.object].id, s.objective, s.bytes});
      }
      observer(result.iterations.size() + 1, ranking);
    }
    if (!(scored.front().objective > 0.0)) {
      result.stop_reason = StopReason::kNoPositiveObjective;
      break;
    }
    auto pick = std::find_if(scored.begin(), scored.end(), [&](const Scored& s) {
      return s.objective > 0.0 && s.bytes <= static_cast<std::uint64_t>(remaining);
    });
    if (pick == scored.end() || !(pick->objective > 0.0)) {
      // Improving objects exist but none fits.
      result.stop_reason = StopReason::kBudgetExhausted;
      break;
    }

    const CandidateObject& chosen = objects[pick->object];
    Iteration step;
    step.object = chosen.id;
    step.objective = pick->objective;
    step.best_objective = scored.front().objective;
    step.added_bytes = pick->bytes;
    for (const Structure& s : chosen.members()) {
      if (!result.config.contains(s)) step.added.push_back(structure_id(space, s));
    }
    result.config.add(chosen, model);
    remaining -= static_cast<std::int64_t>(pick->bytes);
    step.remaining_budget = remaining;
    result.iterations.push_back(std::move(step));
  }
  return result;
}

SelectionResult greedy_select(const CostModel& model, std::int64_t budget,
                              const ObjectiveParams& params, Family family) {
  const std::vector<CandidateObject> objects = enumerate_objects(model.space(), family);
  return greedy_select(model, objects, budget, params);
}

}  // namespace vixsel
