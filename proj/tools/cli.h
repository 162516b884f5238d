#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vixsel/baselines.h"
#include "vixsel/benefit.h"
#include "vixsel/cost_model.h"
#include "vixsel/design_space.h"
#include "vixsel/selector.h"

namespace vixsel::cli {

enum class Strategy { kNone, kViewsOnly, kIndexesOnly, kSimultaneous, kExhaustive };

// Names used in sweep output: none, views, indexes, simultaneous, exhaustive.
std::string_view to_string(Strategy strategy);

struct StrategyOutcome {
  Strategy strategy = Strategy::kNone;
  Configuration config;
  std::vector<Iteration> iterations;
  std::optional<StopReason> stop_reason;  // greedy strategies only
  CostReport costs;
};

StrategyOutcome run_strategy(Strategy strategy, const CostModel& model, std::int64_t budget,
                             const ObjectiveParams& params,
                             const ScoreObserver& observer = {});

// Bytes used by the simultaneous selection when storage is unconstrained;
// budget percentages and sweep fractions are relative to it.
std::uint64_t unconstrained_footprint(const CostModel& model, const ObjectiveParams& params);

struct SweepRow {
  double fraction = 0.0;
  Strategy strategy = Strategy::kNone;
  std::uint64_t total_cost = 0;
  std::uint64_t used_bytes = 0;
  std::vector<std::string> objects;
};

// One row per (fraction, strategy) for strategies none, views, indexes,
// simultaneous. Throws ValidationError for fractions outside (0, 1].
std::vector<SweepRow> run_sweep(const CostModel& model, std::span<const double> fractions,
                                const ObjectiveParams& params);

// Header: budget_fraction,strategy,total_cost_blocks,used_bytes,objects
std::string sweep_csv(std::span<const SweepRow> rows);

struct AdviseInput {
  std::int64_t budget = 0;
  Strategy strategy = Strategy::kSimultaneous;
  ObjectiveParams params;
  bool trace = false;
};

std::string advise_report_text(const CostModel& model, const AdviseInput& input);
std::string advise_report_json(const CostModel& model, const AdviseInput& input);

// Parses "<bytes>" or "<N>%" (percentage of `footprint`). Negative values
// throw InvalidBudget; malformed text throws ValidationError.
std::int64_t parse_budget(std::string_view text, std::uint64_t footprint);

// Full command line. Exit codes: 0 success, 1 input error, 2 constraint error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vixsel::cli
