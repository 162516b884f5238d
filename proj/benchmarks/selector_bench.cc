#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "vixsel/baselines.h"
#include "vixsel/selector.h"

namespace {

using namespace vixsel;

const DesignSpace& fixture_space() {
  static const DesignSpace space = [] {
    const std::string dir = VIXSEL_FIXTURE_DIR;
    SchemaCatalog catalog = load_catalog_file(dir + "/sh_catalog.yaml");
    Workload workload = load_workload_file(dir + "/sh_workload.sql", catalog);
    CandidateSet c = load_candidates_file(dir + "/sh_candidates.yaml", catalog);
    return DesignSpace::assemble(std::move(catalog), std::move(workload), std::move(c.views),
                                 std::move(c.indexes));
  }();
  return space;
}

void BM_TotalCostEverythingSelected(benchmark::State& state) {
  const DesignSpace& s = fixture_space();
  const CostModel model(s);
  Selection sel(s);
  for (const CandidateObject& o : enumerate_objects(s)) {
    for (const Structure& st : o.members()) sel.insert(st);
  }
  for (auto _ : state) benchmark::DoNotOptimize(model.total_cost(sel));
}
BENCHMARK(BM_TotalCostEverythingSelected);

void BM_CostModelBuild(benchmark::State& state) {
  const DesignSpace& s = fixture_space();
  for (auto _ : state) {
    CostModel model(s);
    benchmark::DoNotOptimize(model.view_blocks(0));
  }
}
BENCHMARK(BM_CostModelBuild);

void BM_GreedySimultaneous(benchmark::State& state) {
  const DesignSpace& s = fixture_space();
  const CostModel model(s);
  const std::int64_t budget = state.range(0) == 0 ? INT64_MAX : state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_select(model, budget, {}).config.used_bytes());
}
BENCHMARK(BM_GreedySimultaneous)->Arg(1'000'000)->Arg(100'000'000)->Arg(0);

void BM_Exhaustive(benchmark::State& state) {
  const DesignSpace& s = fixture_space();
  const CostModel model(s);
  auto objects = enumerate_objects(s);
  objects.resize(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_select(model, objects, INT64_MAX, {}).workload_cost);
  }
}
BENCHMARK(BM_Exhaustive)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
