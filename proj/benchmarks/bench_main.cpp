#include <string>

#include <benchmark/benchmark.h>

#include "coinroute/agents.hpp"
#include "coinroute/harness.hpp"
#include "coinroute/lb_analysis.hpp"
#include "coinroute/path_game.hpp"

using namespace coinroute;

namespace {

Scenario bundled(const std::string& name) {
  return load_scenario(std::string(COINROUTE_SCENARIO_DIR) + "/" + name + ".scn");
}

// Whole runs on the heaviest row of a scenario's second network.
void run_policy(benchmark::State& state, const std::string& name, AgentPolicy policy) {
  const Scenario s = bundled(name);
  const Topology t = s.network(Variant::kB, s.loads.back());
  RunPlan plan = s.plan;
  plan.bootstrap_waves = 20;
  plan.measured_waves = 50;
  const WaveSchedule sched = resolve_schedule(plan, t);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    AgentRouter router(policy);
    benchmark::DoNotOptimize(run(t, sched, router, seed++).per_packet_cost);
  }
  state.SetItemsProcessed(state.iterations() * sched.total_waves);
  state.SetLabel("waves");
}

void BM_HexIspa(benchmark::State& s) { run_policy(s, "hex-linear", AgentPolicy{}); }
void BM_HexFk(benchmark::State& s) { run_policy(s, "hex-linear", AgentPolicy{Algorithm::kFullKnowledge}); }
void BM_HexMb(benchmark::State& s) { run_policy(s, "hex-linear", AgentPolicy{Algorithm::kMemoryBased, 0.5}); }
void BM_RayIspa(benchmark::State& s) { run_policy(s, "ray", AgentPolicy{}); }
void BM_RayMb(benchmark::State& s) { run_policy(s, "ray", AgentPolicy{Algorithm::kMemoryBased, 0.5}); }

void BM_CostToDestination(benchmark::State& state) {
  const Scenario s = bundled("ray");
  const Topology& t = s.net(Variant::kB);
  const std::vector<double> loads(t.router_count(), 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(cost_to_destination(t, t.destinations()[0], loads));
}

void BM_TrainingNearest(benchmark::State& state) {
  TrainingSet ts;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (long i = 0; i < state.range(0); ++i) {
    ts.add(TrainingExample{{}, {u(rng), u(rng), u(rng)}, static_cast<RouterId>(i % 3), u(rng)});
  }
  const std::vector<double> q{1.0, 2.0, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(ts.nearest(q, 1));
}

void BM_ThresholdSimulation(benchmark::State& state) {
  const ThresholdModel m{LoadToCost::power(1, 2), LoadToCost::affine(0, 1), 1000, 548.0};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_threshold(m, 100000).average_cost);
  state.SetItemsProcessed(state.iterations() * 100000);
}

void BM_BestResponse(benchmark::State& state) {
  const Scenario s = bundled("butterfly");
  const PathGame game(s.network(Variant::kB, s.loads.back()));
  for (auto _ : state) benchmark::DoNotOptimize(best_response_dynamics(game).total);
}

}  // namespace

BENCHMARK(BM_HexIspa)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HexFk)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HexMb)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RayIspa)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RayMb)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CostToDestination);
BENCHMARK(BM_TrainingNearest)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(BM_ThresholdSimulation)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestResponse);

BENCHMARK_MAIN();
