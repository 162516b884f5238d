#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vixsel/cost_model.h"
#include "vixsel/design_space.h"
#include "vixsel/structure.h"

namespace vixsel {

// A member of O that the selector can pick: a view, a base index, or a view
// together with an index built on it.
enum class ObjectKind { kView, kIndex, kComposite };

struct CandidateObject {
  ObjectKind kind = ObjectKind::kView;
  std::size_t view = 0;
  std::size_t index = 0;
  std::string id;  // "v3", "i9", "v3+i9"

  static CandidateObject of_view(const DesignSpace& space, std::size_t v);
  static CandidateObject of_index(const DesignSpace& space, std::size_t i);
  static CandidateObject composite(const DesignSpace& space, std::size_t v, std::size_t i);

  std::vector<Structure> members() const;
};

// The growing set of selected structures.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(const DesignSpace& space) : selection_(space) {}

  const Selection& selection() const { return selection_; }
  // Insertion order.
  const std::vector<Structure>& selected() const { return selected_; }
  std::uint64_t used_bytes() const { return used_bytes_; }
  bool contains(const Structure& s) const { return selection_.contains(s); }
  bool contains_all(const CandidateObject& o) const;

  // Adds the structure and its size. Throws ValidationError when an index on
  // a view is added before the view.
  void add(const Structure& s, const CostModel& model);
  void add(const CandidateObject& o, const CostModel& model);

  std::vector<std::string> ids(const DesignSpace& space) const;

 private:
  Selection selection_;
  std::vector<Structure> selected_;
  std::uint64_t used_bytes_ = 0;
};

enum class ObjectiveMode { kNormalized, kLiteral };

struct ObjectiveParams {
  double refresh_ratio = 0.0;
  // |O|; 0 means |I| + |V| of the design space.
  std::size_t total_object_count = 0;
  ObjectiveMode mode = ObjectiveMode::kNormalized;
};

// beta = |Q| * (1 / |O|) * refresh_ratio.
double beta(const ObjectiveParams& params, const DesignSpace& space);

// Cost drop per byte. First branch: no related structure is selected.
double density_first_branch(std::uint64_t cost_before, std::uint64_t cost_after,
                            std::uint64_t own_bytes);
// Second branch: the sizes of the related selected structures (V' or I') join
// the denominator.
double density_second_branch(std::uint64_t cost_before, std::uint64_t cost_after,
                             std::uint64_t own_bytes,
                             std::span<const std::uint64_t> related_bytes);

// benefit(Q, Config u {i}) for a base index i not in the configuration.
// V' = selected views whose grouping attributes include i's column.
double index_benefit(const CostModel& model, const Configuration& config, std::size_t index);
// benefit(Q, Config u {v}); I' = selected base indexes on v's grouping columns.
double view_benefit(const CostModel& model, const Configuration& config, std::size_t view);
// Combined cost drop of (v, index on v) over the combined size of both.
double composite_benefit(const CostModel& model, const Configuration& config,
                         std::size_t view, std::size_t index);

double benefit(const CostModel& model, const Configuration& config,
               const CandidateObject& object);

// Summed over the object's members.
std::uint64_t object_size(const CostModel& model, const CandidateObject& object);
std::uint64_t maintenance_cost(const CostModel& model, const CandidateObject& object);

// F = benefit - beta * C_maintenance              (literal)
// F = benefit - beta * C_maintenance / taille(o)  (normalized, default)
double objective(const CostModel& model, const Configuration& config,
                 const CandidateObject& object, const ObjectiveParams& params);

}  // namespace vixsel
