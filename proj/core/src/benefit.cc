#include "vixsel/benefit.h"

#include <algorithm>
#include <limits>

#include "vixsel/errors.h"

namespace vixsel {

CandidateObject CandidateObject::of_view(const DesignSpace& space, std::size_t v) {
  return {ObjectKind::kView, v, 0, space.views[v].id};
}

CandidateObject CandidateObject::of_index(const DesignSpace& space, std::size_t i) {
  return {ObjectKind::kIndex, 0, i, space.indexes[i].id};
}

CandidateObject CandidateObject::composite(const DesignSpace& space, std::size_t v,
                                           std::size_t i) {
  return {ObjectKind::kComposite, v, i, space.views[v].id + "+" + space.indexes[i].id};
}

std::vector<Structure> CandidateObject::members() const {
  switch (kind) {
    case ObjectKind::kView:
      return {Structure::of_view(view)};
    case ObjectKind::kIndex:
      return {Structure::of_base_index(index)};
    case ObjectKind::kComposite:
      break;
  }
  return {Structure::of_view(view), Structure::of_view_index(view, index)};
}

bool Configuration::contains_all(const CandidateObject& o) const {
  const std::vector<Structure> members = o.members();
  return std::all_of(members.begin(), members.end(),
                     [&](const Structure& s) { return contains(s); });
}

void Configuration::add(const Structure& s, const CostModel& model) {
  if (contains(s)) {
    throw ValidationError("structure " + structure_id(model.space(), s) +
                          " is already selected");
  }
  if (s.kind == StructureKind::kViewIndex && !selection_.has_view(s.view)) {
    throw ValidationError("index " + structure_id(model.space(), s) +
                          " requires its view to be selected first");
  }
  selection_.insert(s);
  selected_.push_back(s);
  used_bytes_ += model.object_size(s);
}

void Configuration::add(const CandidateObject& o, const CostModel& model) {
  for (const Structure& s : o.members()) {
    if (!contains(s)) add(s, model);
  }
}

std::vector<std::string> Configuration::ids(const DesignSpace& space) const {
  std::vector<std::string> out;
  out.reserve(selected_.size());
  for (const Structure& s : selected_) out.push_back(structure_id(space, s));
  return out;
}

double beta(const ObjectiveParams& params, const DesignSpace& space) {
  const std::size_t objects = params.total_object_count != 0
                                  ? params.total_object_count
                                  : space.index_count() + space.view_count();
  return static_cast<double>(space.query_count()) *
         (1.0 / static_cast<double>(std::max<std::size_t>(objects, 1))) *
         params.refresh_ratio;
}

double density_first_branch(std::uint64_t cost_before, std::uint64_t cost_after,
                            std::uint64_t own_bytes) {
  if (cost_after >= cost_before || own_bytes == 0) return 0.0;
  return static_cast<double>(cost_before - cost_after) / static_cast<double>(own_bytes);
}

double density_second_branch(std::uint64_t cost_before, std::uint64_t cost_after,
                             std::uint64_t own_bytes,
                             std::span<const std::uint64_t> related_bytes) {
  std::uint64_t denominator = own_bytes;
  for (std::uint64_t b : related_bytes) denominator += b;
  if (cost_after >= cost_before || denominator == 0) return 0.0;
  return static_cast<double>(cost_before - cost_after) / static_cast<double>(denominator);
}

namespace {

std::uint64_t cost_with(const CostModel& model, const Configuration& config,
                        std::initializer_list<Structure> added) {
  Selection selection = config.selection();
  for (const Structure& s : added) selection.insert(s);
  return model.total_cost(selection);
}

}  // namespace

double index_benefit(const CostModel& model, const Configuration& config,
                     std::size_t index) {
  const DesignSpace& space = model.space();
  const Structure self = Structure::of_base_index(index);
  const std::uint64_t before = model.total_cost(config.selection());
  // V' is already part of the configuration, so only i changes the cost.
  const std::uint64_t after = cost_with(model, config, {self});

  std::vector<std::uint64_t> related;
  for (std::size_t v = 0; v < space.view_count(); ++v) {
    if (config.selection().has_view(v) && space.matrices.vi(v, index)) {
      related.push_back(model.object_size(Structure::of_view(v)));
    }
  }
  if (related.empty()) return density_first_branch(before, after, model.object_size(self));
  return density_second_branch(before, after, model.object_size(self), related);
}

double view_benefit(const CostModel& model, const Configuration& config, std::size_t view) {
  const DesignSpace& space = model.space();
  const Structure self = Structure::of_view(view);
  const std::uint64_t before = model.total_cost(config.selection());
  const std::uint64_t after = cost_with(model, config, {self});

  std::vector<std::uint64_t> related;
  for (std::size_t i = 0; i < space.index_count(); ++i) {
    if (config.selection().has_base_index(i) && space.matrices.vi(view, i)) {
      related.push_back(model.object_size(Structure::of_base_index(i)));
    }
  }
  if (related.empty()) return density_first_branch(before, after, model.object_size(self));
  return density_second_branch(before, after, model.object_size(self), related);
}

double composite_benefit(const CostModel& model, const Configuration& config,
                         std::size_t view, std::size_t index) {
  const Structure v = Structure::of_view(view);
  const Structure vi = Structure::of_view_index(view, index);
  const std::uint64_t before = model.total_cost(config.selection());
  const std::uint64_t after = cost_with(model, config, {v, vi});
  // With v already selected this is the index formula's second branch with
  // V' = {v}; otherwise both members are new. The denominator is the same.
  return density_first_branch(before, after, model.object_size(v) + model.object_size(vi));
}

double benefit(const CostModel& model, const Configuration& config,
               const CandidateObject& object) {
  switch (object.kind) {
    case ObjectKind::kView:
      return view_benefit(model, config, object.view);
    case ObjectKind::kIndex:
      return index_benefit(model, config, object.index);
    case ObjectKind::kComposite:
      break;
  }
  return composite_benefit(model, config, object.view, object.index);
}

std::uint64_t object_size(const CostModel& model, const CandidateObject& object) {
  std::uint64_t total = 0;
  for (const Structure& s : object.members()) total += model.object_size(s);
  return total;
}

std::uint64_t maintenance_cost(const CostModel& model, const CandidateObject& object) {
  std::uint64_t total = 0;
  for (const Structure& s : object.members()) total += model.maintenance_cost(s);
  return total;
}

double objective(const CostModel& model, const Configuration& config,
                 const CandidateObject& object, const ObjectiveParams& params) {
  const double gain = benefit(model, config, object);
  const double b = beta(params, model.space());
  if (b == 0.0) return gain;
  const double maintenance = static_cast<double>(maintenance_cost(model, object));
  if (params.mode == ObjectiveMode::kLiteral) return gain - b * maintenance;
  const std::uint64_t size = object_size(model, object);
  if (size == 0) return maintenance == 0.0 ? gain : -std::numeric_limits<double>::infinity();
  return gain - b * maintenance / static_cast<double>(size);
}

}  // namespace vixsel
