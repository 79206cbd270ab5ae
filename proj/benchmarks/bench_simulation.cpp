#include <benchmark/benchmark.h>

#include <filesystem>

#include "fixtures.hpp"
#include "unforced/ingest.hpp"
#include "unforced/notation.hpp"
#include "unforced/simulator.hpp"

using namespace unforced;

namespace {

const ServePoolSet& pools() {
  static const ServePoolSet set = [] {
    auto [rows, report] =
        clean_rows(parse_points_file(std::filesystem::path(testing::kDataDir) / "synthetic_points.csv"));
    const auto records = explode_to_serves(rows).first;
    return build_pools(records, testing::kPlayerA, testing::kPlayerB);
  }();
  return set;
}

void BM_ParseNotation(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_shot_notation("6f29f1f1f1f1f1f1f1f1f2n@", 1));
  }
}
BENCHMARK(BM_ParseNotation);

void BM_SimulateMatch(benchmark::State& state) {
  const auto table = default_table();
  SimulationConfig config;
  config.scenario = Scenario::reduce(0.1);
  std::size_t i = 0;
  for (auto _ : state) {
    auto rng = RandomStream::for_replicate(config.seed, i);
    benchmark::DoNotOptimize(simulate_match(config, pools(), table, rng, i++));
  }
}
BENCHMARK(BM_SimulateMatch);

void BM_RunSimulation(benchmark::State& state) {
  const auto table = default_table();
  SimulationConfig config;
  config.n_matches = 3000;
  config.executors = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(config, pools(), table));
}
BENCHMARK(BM_RunSimulation)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
