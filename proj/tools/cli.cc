#include "cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <json.hpp>

#include "vixsel/errors.h"

namespace vixsel::cli {

using json = nlohmann::ordered_json;

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kNone:
      return "none";
    case Strategy::kViewsOnly:
      return "views";
    case Strategy::kIndexesOnly:
      return "indexes";
    case Strategy::kSimultaneous:
      return "simultaneous";
    case Strategy::kExhaustive:
      break;
  }
  return "exhaustive";
}

StrategyOutcome run_strategy(Strategy strategy, const CostModel& model, std::int64_t budget,
                             const ObjectiveParams& params, const ScoreObserver& observer) {
  if (budget < 0) throw InvalidBudget("budget must be >= 0, got " + std::to_string(budget));
  StrategyOutcome out;
  out.strategy = strategy;
  out.config = Configuration(model.space());
  switch (strategy) {
    case Strategy::kNone:
      break;
    case Strategy::kExhaustive: {
      const std::vector<CandidateObject> objects = enumerate_objects(model.space());
      out.config = exhaustive_select(model, objects, budget, params).config;
      break;
    }
    default: {
      const Family family = strategy == Strategy::kViewsOnly     ? Family::kViewsOnly
                            : strategy == Strategy::kIndexesOnly ? Family::kIndexesOnly
                                                                 : Family::kSimultaneous;
      const std::vector<CandidateObject> objects = enumerate_objects(model.space(), family);
      SelectionResult result = greedy_select(model, objects, budget, params, observer);
      out.config = std::move(result.config);
      out.iterations = std::move(result.iterations);
      out.stop_reason = result.stop_reason;
      break;
    }
  }
  out.costs = model.workload_cost(out.config.selection());
  return out;
}

std::uint64_t unconstrained_footprint(const CostModel& model, const ObjectiveParams& params) {
  return greedy_select(model, std::numeric_limits<std::int64_t>::max(), params)
      .config.used_bytes();
}

namespace {

std::int64_t fraction_budget(double fraction, std::uint64_t footprint) {
  const double bytes = std::floor(fraction * static_cast<double>(footprint));
  if (bytes >= static_cast<double>(std::numeric_limits<std::int64_t>::max())) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return static_cast<std::int64_t>(bytes);
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

}  // namespace

std::vector<SweepRow> run_sweep(const CostModel& model, std::span<const double> fractions,
                                const ObjectiveParams& params) {
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw ValidationError(fmt::format("sweep fraction {} is outside (0, 1]", f));
    }
  }
  const std::uint64_t footprint = unconstrained_footprint(model, params);
  std::vector<SweepRow> rows;
  for (double f : fractions) {
    const std::int64_t budget = fraction_budget(f, footprint);
    for (Strategy s : {Strategy::kNone, Strategy::kViewsOnly, Strategy::kIndexesOnly,
                       Strategy::kSimultaneous}) {
      StrategyOutcome outcome = run_strategy(s, model, budget, params);
      rows.push_back({f, s, outcome.costs.total, outcome.config.used_bytes(),
                      outcome.config.ids(model.space())});
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "budget_fraction,strategy,total_cost_blocks,used_bytes,objects\n";
  for (const SweepRow& row : rows) {
    out += fmt::format("{},{},{},{},{}\n", row.fraction, to_string(row.strategy),
                       row.total_cost, row.used_bytes, join(row.objects, " "));
  }
  return out;
}

std::int64_t parse_budget(std::string_view text, std::uint64_t footprint) {
  if (text.empty()) throw ValidationError("empty budget");
  const bool percent = text.back() == '%';
  if (percent) text.remove_suffix(1);
  if (!text.empty() && text.front() == '-') {
    throw InvalidBudget("budget must be >= 0, got " + std::string(text));
  }
  if (percent) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
      throw ValidationError("malformed budget percentage '" + std::string(text) + "%'");
    }
    return fraction_budget(value / 100.0, footprint);
  }
  std::int64_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ValidationError("malformed budget '" + std::string(text) + "'");
  }
  return value;
}

namespace {

struct Report {
  StrategyOutcome baseline;  // nothing selected
  StrategyOutcome chosen;
  std::vector<StrategyOutcome> comparison;
  std::vector<std::pair<std::size_t, std::vector<ObjectScore>>> rankings;
};

Report build_report(const CostModel& model, const AdviseInput& input) {
  Report report;
  ScoreObserver observer;
  if (input.trace) {
    observer = [&report](std::size_t round, const std::vector<ObjectScore>& ranking) {
      report.rankings.emplace_back(round, ranking);
    };
  }
  report.baseline = run_strategy(Strategy::kNone, model, input.budget, input.params);
  report.chosen = run_strategy(input.strategy, model, input.budget, input.params, observer);
  for (Strategy s : {Strategy::kViewsOnly, Strategy::kIndexesOnly, Strategy::kSimultaneous}) {
    report.comparison.push_back(run_strategy(s, model, input.budget, input.params));
  }
  return report;
}

std::string_view objective_name(ObjectiveMode mode) {
  return mode == ObjectiveMode::kLiteral ? "literal" : "normalized";
}

std::string matrix_text(const BoolMatrix& m, const std::vector<std::string>& rows,
                        const std::vector<std::string>& cols) {
  std::size_t w = 4;
  for (const auto& c : cols) w = std::max(w, c.size() + 1);
  std::string out = fmt::format("{:<6}", "");
  for (const auto& c : cols) out += fmt::format("{:>{}}", c, w);
  out += "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += fmt::format("{:<6}", rows[r]);
    for (std::size_t c = 0; c < cols.size(); ++c) out += fmt::format("{:>{}}", m(r, c) ? 1 : 0, w);
    out += "\n";
  }
  return out;
}

std::vector<std::string> query_ids(const DesignSpace& space) {
  std::vector<std::string> out;
  for (const Query& q : space.workload.queries) out.push_back(q.id);
  return out;
}
std::vector<std::string> view_ids(const DesignSpace& space) {
  std::vector<std::string> out;
  for (const ViewCandidate& v : space.views) out.push_back(v.id);
  return out;
}
std::vector<std::string> index_ids(const DesignSpace& space) {
  std::vector<std::string> out;
  for (const IndexCandidate& i : space.indexes) out.push_back(i.id);
  return out;
}

std::vector<std::string> attr_strings(const std::vector<AttributeRef>& attrs) {
  std::vector<std::string> out;
  for (const AttributeRef& a : attrs) out.push_back(a.str());
  return out;
}
std::vector<std::string> agg_strings(const std::vector<Aggregate>& aggs) {
  std::vector<std::string> out;
  for (const Aggregate& a : aggs) out.push_back(a.str());
  return out;
}

std::string stop_text(const StrategyOutcome& o) {
  return o.stop_reason ? std::string(to_string(*o.stop_reason)) : std::string("-");
}

}  // namespace

std::string advise_report_text(const CostModel& model, const AdviseInput& input) {
  const DesignSpace& space = model.space();
  const Report report = build_report(model, input);
  std::string out;
  out += fmt::format("cost model: {}\n", CostModel::kVersion);
  out += fmt::format("strategy: {}  budget: {} bytes  refresh_ratio: {}  objective: {}  beta: {}\n\n",
                     to_string(input.strategy), input.budget, input.params.refresh_ratio,
                     objective_name(input.params.mode), beta(input.params, space));

  out += fmt::format("views ({})\n", space.view_count());
  for (const ViewCandidate& v : space.views) {
    out += fmt::format("  {}  rows={} width={} bytes={}  group by {}  {}\n", v.id,
                       v.stats.row_count, v.stats.row_width, v.stats.bytes(),
                       join(attr_strings(v.group_by), ", "), join(agg_strings(v.aggregates), ", "));
  }
  out += fmt::format("indexes ({})\n", space.index_count());
  for (std::size_t i = 0; i < space.index_count(); ++i) {
    out += fmt::format("  {}  {}  bytes={}\n", space.indexes[i].id, space.indexes[i].attribute.str(),
                       model.object_size(Structure::of_base_index(i)));
  }

  out += "\nQV\n" + matrix_text(space.matrices.qv, query_ids(space), view_ids(space));
  out += "\nQI\n" + matrix_text(space.matrices.qi, query_ids(space), index_ids(space));
  out += "\nVI\n" + matrix_text(space.matrices.vi, view_ids(space), index_ids(space));

  out += "\nselection trace\n";
  if (report.chosen.iterations.empty()) out += "  (no iterations)\n";
  for (std::size_t k = 0; k < report.chosen.iterations.size(); ++k) {
    const Iteration& it = report.chosen.iterations[k];
    out += fmt::format("  {:>3}  {:<10} F={:.6g}  +{} bytes  remaining={}  adds {}\n", k + 1,
                       it.object, it.objective, it.added_bytes, it.remaining_budget,
                       join(it.added, ","));
  }
  out += fmt::format("  stop: {}\n", stop_text(report.chosen));

  if (input.trace) {
    out += "\nscores per round\n";
    for (const auto& [round, ranking] : report.rankings) {
      out += fmt::format("  round {}\n", round + 1);
      for (const ObjectScore& s : ranking) {
        out += fmt::format("    {:<10} F={:.6g}  bytes={}\n", s.object, s.objective, s.bytes);
      }
    }
  }

  out += "\nfinal configuration\n";
  for (const Structure& s : report.chosen.config.selected()) {
    out += fmt::format("  {:<10} {} bytes\n", structure_id(space, s), model.object_size(s));
  }
  out += fmt::format("  used {} of {} bytes\n", report.chosen.config.used_bytes(), input.budget);

  out += "\nper-query cost (blocks)\n";
  for (std::size_t q = 0; q < space.query_count(); ++q) {
    const auto& before = report.baseline.costs.per_query[q];
    const auto& after = report.chosen.costs.per_query[q];
    out += fmt::format("  {:<6} before={:<10} after={:<10} via {}\n", before.query_id,
                       before.blocks, after.blocks, after.rewriting);
  }
  out += fmt::format("  total  before={:<10} after={}\n", report.baseline.costs.total,
                     report.chosen.costs.total);

  out += "\nstrategy comparison at this budget\n";
  out += fmt::format("  {:<13} {}\n", "none", report.baseline.costs.total);
  for (const StrategyOutcome& o : report.comparison) {
    out += fmt::format("  {:<13} {}  ({} bytes)\n", to_string(o.strategy), o.costs.total,
                       o.config.used_bytes());
  }
  return out;
}

std::string advise_report_json(const CostModel& model, const AdviseInput& input) {
  const DesignSpace& space = model.space();
  const Report report = build_report(model, input);
  json doc;
  doc["cost_model"] = CostModel::kVersion;
  doc["strategy"] = to_string(input.strategy);
  doc["budget"] = input.budget;
  doc["refresh_ratio"] = input.params.refresh_ratio;
  doc["objective"] = objective_name(input.params.mode);
  doc["beta"] = beta(input.params, space);

  json views = json::array();
  for (const ViewCandidate& v : space.views) {
    views.push_back({{"id", v.id},
                     {"tables", v.joined_tables},
                     {"group_by", attr_strings(v.group_by)},
                     {"aggregates", agg_strings(v.aggregates)},
                     {"rows", v.stats.row_count},
                     {"width", v.stats.row_width},
                     {"bytes", v.stats.bytes()}});
  }
  json indexes = json::array();
  for (std::size_t i = 0; i < space.index_count(); ++i) {
    indexes.push_back({{"id", space.indexes[i].id},
                       {"attribute", space.indexes[i].attribute.str()},
                       {"bytes", model.object_size(Structure::of_base_index(i))}});
  }
  doc["views"] = std::move(views);
  doc["indexes"] = std::move(indexes);

  auto matrix = [](const BoolMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  doc["matrices"] = {{"queries", query_ids(space)},
                     {"QV", matrix(space.matrices.qv)},
                     {"QI", matrix(space.matrices.qi)},
                     {"VI", matrix(space.matrices.vi)}};

  json trace = json::array();
  for (const Iteration& it : report.chosen.iterations) {
    trace.push_back({{"object", it.object},
                     {"added", it.added},
                     {"F", it.objective},
                     {"bytes", it.added_bytes},
                     {"remaining_budget", it.remaining_budget}});
  }
  doc["trace"] = std::move(trace);
  doc["stop_reason"] = stop_text(report.chosen);
  if (input.trace) {
    json rounds = json::array();
    for (const auto& [round, ranking] : report.rankings) {
      json scores = json::array();
      for (const ObjectScore& s : ranking) {
        scores.push_back({{"object", s.object}, {"F", s.objective}, {"bytes", s.bytes}});
      }
      rounds.push_back({{"round", round + 1}, {"scores", std::move(scores)}});
    }
    doc["rankings"] = std::move(rounds);
  }

  json config = json::array();
  for (const Structure& s : report.chosen.config.selected()) {
    config.push_back({{"id", structure_id(space, s)}, {"bytes", model.object_size(s)}});
  }
  doc["configuration"] = std::move(config);
  doc["used_bytes"] = report.chosen.config.used_bytes();

  json queries = json::array();
  for (std::size_t q = 0; q < space.query_count(); ++q) {
    queries.push_back({{"id", report.baseline.costs.per_query[q].query_id},
                       {"before", report.baseline.costs.per_query[q].blocks},
                       {"after", report.chosen.costs.per_query[q].blocks},
                       {"rewriting", report.chosen.costs.per_query[q].rewriting}});
  }
  doc["queries"] = std::move(queries);
  doc["total_before"] = report.baseline.costs.total;
  doc["total_after"] = report.chosen.costs.total;

  json comparison = {{"none", report.baseline.costs.total}};
  for (const StrategyOutcome& o : report.comparison) {
    comparison[std::string(to_string(o.strategy))] = o.costs.total;
  }
  doc["comparison"] = std::move(comparison);
  return doc.dump(2) + "\n";
}

namespace {

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw ValidationError("malformed sweep fraction '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw ValidationError("empty sweep list");
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simultaneous selection of materialized views and indexes"};
  app.name("vixsel");

  std::string schema_path, workload_path, candidates_path, budget_text, out_path;
  std::string mode = "simultaneous", objective_text = "normalized", format = "text";
  std::string sweep_text;
  std::optional<double> refresh_ratio;
  std::size_t min_support = 1;
  bool trace = false;

  app.add_option("--schema", schema_path, "catalog file (YAML)")->required();
  app.add_option("--workload", workload_path, "workload file (SQL)")->required();
  app.add_option("--candidates", candidates_path, "fixed candidate views and indexes (YAML)");
  app.add_option("--budget", budget_text, "storage budget: bytes or N% of the unconstrained footprint");
  app.add_option("--mode", mode, "strategy")
      ->check(CLI::IsMember({"exhaustive", "view-only", "index-only", "simultaneous", "none"}));
  app.add_option("--refresh-ratio", refresh_ratio, "refresh operations per query (overrides the workload file)");
  app.add_option("--min-support", min_support, "queries an attribute needs to become an index candidate");
  app.add_option("--objective", objective_text, "penalty form")
      ->check(CLI::IsMember({"literal", "normalized"}));
  app.add_option("--sweep", sweep_text, "comma-separated budget fractions in (0, 1]");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--trace", trace, "include every round's score ranking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (budget_text.empty() && sweep_text.empty()) {
      throw ValidationError("--budget is required unless --sweep is given");
    }
    SchemaCatalog catalog = load_catalog_file(schema_path);
    Workload workload = load_workload_file(workload_path, catalog);
    if (refresh_ratio) {
      if (*refresh_ratio < 0.0) throw ValidationError("--refresh-ratio must be >= 0");
      workload.refresh_ratio = *refresh_ratio;
    }
    const DesignSpace space = [&] {
      if (candidates_path.empty()) {
        return DesignSpace::generate(std::move(catalog), std::move(workload), min_support);
      }
      CandidateSet candidates = load_candidates_file(candidates_path, catalog);
      return DesignSpace::assemble(std::move(catalog), std::move(workload),
                                   std::move(candidates.views), std::move(candidates.indexes));
    }();
    const CostModel model(space);

    ObjectiveParams params;
    params.refresh_ratio = space.workload.refresh_ratio;
    params.mode = objective_text == "literal" ? ObjectiveMode::kLiteral : ObjectiveMode::kNormalized;

    std::string text;
    if (!sweep_text.empty()) {
      const std::vector<double> fractions = parse_fractions(sweep_text);
      text = sweep_csv(run_sweep(model, fractions, params));
    } else {
      AdviseInput input;
      const bool percent = !budget_text.empty() && budget_text.back() == '%';
      input.budget = parse_budget(budget_text, percent ? unconstrained_footprint(model, params) : 0);
      input.strategy = mode == "none"         ? Strategy::kNone
                       : mode == "view-only"  ? Strategy::kViewsOnly
                       : mode == "index-only" ? Strategy::kIndexesOnly
                       : mode == "exhaustive" ? Strategy::kExhaustive
                                              : Strategy::kSimultaneous;
      input.params = params;
      input.trace = trace;
      text = format == "json" ? advise_report_json(model, input) : advise_report_text(model, input);
    }

    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw ValidationError("cannot write " + out_path);
      file << text;
    }
    return 0;
  } catch (const InvalidBudget& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const TooManyObjects& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vixsel::cli
