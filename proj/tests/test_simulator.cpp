#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "coinroute/agents.hpp"
#include "coinroute/simulator.hpp"
#include "test_support.hpp"

using namespace coinroute;

namespace {

// Uniformly random candidate hop; exercises the engine without any cost logic.
class RandomPolicy : public RoutingPolicy {
 public:
  std::string name() const override { return "random"; }
  void begin_run(const Topology&, const WaveSchedule&, std::uint64_t seed) override { rng_.seed(seed); }
  RouterId decide(const DecisionContext& ctx, AgentKey a) override {
    auto c = ctx.topology.candidates(a.router, ctx.topology.destination_index(a.destination));
    return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng_)];
  }

 private:
  std::mt19937_64 rng_;
};

WaveSchedule plain(int L, int W, int waves, int measure_start = 0) {
  WaveSchedule s;
  s.wave_length = L;
  s.window = W;
  s.total_waves = waves;
  s.measure_start = measure_start;
  return s;
}

double per_packet_ispa(const Topology& t, int seed = 1) {
  const WaveSchedule s = resolve_schedule(RunPlan{.wave_length = 4, .window = 400}, t);
  AgentRouter ispa(AgentPolicy{Algorithm::kIspa, 0.0});
  return run(t, s, ispa, static_cast<std::uint64_t>(seed)).per_packet_cost;
}

}  // namespace

TEST(WorldReward, AllZeroWaveIsZero) {
  const Topology t = test_support::load("hex-linear");
  WaveSnapshot w;
  w.routers = t.router_count();
  w.destinations = 1;
  w.steps.push_back(StepRecord{0, std::vector<int>(t.router_count(), 0), std::vector<double>(t.router_count(), 0.0)});
  EXPECT_EQ(world_reward(t, w), 0.0);
}

TEST(WorldReward, SingleRouterOnePacketWindowOfOneStep) {
  const Topology t = build_topology("node S affine 3 2\nnode D zero\nedge S D\ndemand S D 1\n");
  TrafficState st(t, plain(1, 1, 1));
  inject_demands(st, t);
  const std::vector<RouterId> hops{t.id("D"), kNoRouter};
  const StepResult r = step(st, t, hops);
  EXPECT_DOUBLE_EQ(r.cost, 5.0);  // V_S(1)
  EXPECT_EQ(r.delivered, 1);
  EXPECT_EQ(st.in_flight(), 0);
}

TEST(WorldReward, CoLocatedPacketsShareTheLoad) {
  const Topology t = build_topology(
      "node S affine 0 1\nnode D1 zero\nnode D2 zero\nedge S D1\nedge S D2\n"
      "demand S D1 1\ndemand S D2 1\n");
  TrafficState st(t, plain(1, 1, 1));
  inject_demands(st, t);
  EXPECT_EQ(st.load(t.id("S")), 2);
  std::vector<RouterId> hops(t.router_count() * 2, kNoRouter);
  hops[st.index(t.id("S"), 0)] = t.id("D1");
  hops[st.index(t.id("S"), 1)] = t.id("D2");
  EXPECT_DOUBLE_EQ(step(st, t, hops).cost, 2 * 2.0);  // z_S = 2, each pays V(2)
}

TEST(WorldReward, BraessSixTravelersAtEquilibriumSplit) {
  // Braess functions, travelers split 2/2/2 over the three routes every
  // wave; once the window is full each traveler pays 92.
  const Topology t = test_support::load("braess-figure2", Variant::kB).with_demand_packets(std::vector<int>{6});
  const int L = 4, K = 5;
  TrafficState st(t, plain(L, L * K, 20));
  const RouterId S = t.id("S"), R1 = t.id("R1"), R2 = t.id("R2"), R3 = t.id("R3"), R4 = t.id("R4"),
                 R5 = t.id("R5"), D = t.id("D");
  SplitPlan plan(t.router_count());
  plan[S] = {{R1, 4}, {R3, 2}};
  plan[R1] = {{R2, 2}, {R5, 2}};
  plan[R2] = {{D, 2}};
  plan[R3] = {{R4, 2}};
  plan[R5] = {{R4, 2}};
  plan[R4] = {{D, 4}};
  for (int wave = 0; wave < 20; ++wave) {
    inject_demands(st, t);
    double cost = 0.0;
    for (int s = 0; s < L; ++s) {
      SplitPlan now(t.router_count());
      for (std::size_t r = 0; r < now.size(); ++r) {
        if (st.traffic(static_cast<RouterId>(r), 0) > 0) now[r] = plan[r];
      }
      // R4 receives 2 packets at step 2 and 2 more at step 3.
      if (st.traffic(R4, 0) > 0) now[R4] = {{D, st.traffic(R4, 0)}};
      cost += step(st, t, now).cost;
    }
    if (wave >= K) EXPECT_NEAR(cost, 6 * 92.0, 1e-9) << "wave " << wave;
  }
}

TEST(Step, RejectsBadHopsAndSplits) {
  const Topology t = test_support::load("hex-linear");
  const auto sched = plain(4, 4, 1);
  {
    TrafficState st(t, sched);
    inject_demands(st, t);
    std::vector<RouterId> hops(t.router_count(), kNoRouter);
    hops[t.id("S")] = t.id("R2");  // no link S -> R2
    EXPECT_THROW(step(st, t, hops), SimulationError);
  }
  {
    TrafficState st(t, sched);
    inject_demands(st, t);
    std::vector<RouterId> hops(t.router_count(), kNoRouter);
    EXPECT_THROW(step(st, t, hops), SimulationError);  // traffic without a hop
  }
  {
    TrafficState st(t, sched);
    inject_demands(st, t);
    SplitPlan plan(t.router_count());
    plan[t.id("S")] = {{t.id("R1"), 2}};  // x = 1
    EXPECT_THROW(step(st, t, plan), SimulationError);
  }
  {
    TrafficState st(t, sched);
    EXPECT_THROW(step(st, t, std::vector<RouterId>{1, 2}), SimulationError);
  }
}

TEST(Run, ZeroDemandsIsAnError) {
  TopologyBuilder b;
  b.add_router("S", LoadToCost::zero());
  b.add_router("D", LoadToCost::zero());
  b.add_link("S", "D");
  const Topology t = b.build();
  AgentRouter ispa(AgentPolicy{});
  EXPECT_THROW(run(t, plain(1, 1, 3), ispa, 1), SimulationError);
}

TEST(Run, TooShortWaveLeavesTrafficInFlight) {
  const Topology t = test_support::load("hex-linear");
  AgentRouter ispa(AgentPolicy{});
  EXPECT_THROW(run(t, plain(2, 2, 3), ispa, 1), SimulationError);
}

TEST(Run, DeterministicForSameSeed) {
  const Topology t = test_support::load("hex-linear", Variant::kB).with_demand_packets(std::vector<int>{4});
  const WaveSchedule s = resolve_schedule(RunPlan{.window = 40, .bootstrap_waves = 20, .measured_waves = 50}, t);
  for (Algorithm a : {Algorithm::kIspa, Algorithm::kFullKnowledge, Algorithm::kMemoryBased}) {
    AgentRouter p1(AgentPolicy{a, 0.5});
    AgentRouter p2(AgentPolicy{a, 0.5});
    const RunResult r1 = run(t, s, p1, 42, RunOptions{true});
    const RunResult r2 = run(t, s, p2, 42, RunOptions{true});
    EXPECT_EQ(r1.total_cost, r2.total_cost);
    EXPECT_EQ(r1.wave_rewards, r2.wave_rewards);
    ASSERT_EQ(r1.trajectory->steps.size(), r2.trajectory->steps.size());
    for (std::size_t i = 0; i < r1.trajectory->steps.size(); ++i) {
      EXPECT_EQ(r1.trajectory->steps[i].x, r2.trajectory->steps[i].x);
    }
  }
}

TEST(Run, MeasurementCountsOnlyMeasuredWaves) {
  const Topology t = test_support::load("hex-linear");
  const WaveSchedule s = plain(4, 8, 10, 4);
  AgentRouter ispa(AgentPolicy{});
  const RunResult r = run(t, s, ispa, 3);
  EXPECT_EQ(r.waves_measured, 6);
  EXPECT_EQ(r.packets_injected, 6);
  EXPECT_EQ(r.packets_delivered, 6);
  EXPECT_EQ(r.wave_rewards.size(), 10u);
  double measured = 0.0;
  for (int w = 4; w < 10; ++w) measured += r.wave_rewards[static_cast<std::size_t>(w)];
  EXPECT_EQ(r.total_cost, measured);
}

TEST(Properties, ConservationAndWindowIdentityOnRandomNetworks) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Topology t = build_topology(test_support::random_dag_text(seed, 7));
    const int L = longest_path_length(t);
    const WaveSchedule s = plain(L, 3 * L, 12);
    TrafficState st(t, s);
    RandomPolicy policy;
    policy.begin_run(t, s, seed);
    const std::size_t D = t.destination_count();
    for (int wave = 0; wave < s.total_waves; ++wave) {
      const long in0 = st.injected(), out0 = st.delivered();
      inject_demands(st, t);
      std::vector<RouterId> hops(t.router_count() * D, kNoRouter);
      WaveSnapshot empty;
      for (int k = 0; k < L; ++k) {
        const DecisionContext ctx{t, s, st, empty, hops, hops, wave};
        for (const auto& a : t.agents()) {
          const std::size_t i = st.index(a.router, t.destination_index(a.destination));
          if (st.traffic()[i] > 0 && hops[i] == kNoRouter) hops[i] = policy.decide(ctx, a);
        }
        step(st, t, hops);
        const auto fresh = st.recompute_window_sums();
        ASSERT_EQ(std::vector<long>(st.window_sums().begin(), st.window_sums().end()), fresh);
        for (std::size_t r = 0; r < t.router_count(); ++r) {
          long sum = 0;
          for (std::size_t d = 0; d < D; ++d) sum += fresh[r * D + d];
          EXPECT_NEAR(st.windowed_load(static_cast<RouterId>(r)), static_cast<double>(sum) / s.window_waves(), 1e-12);
        }
      }
      EXPECT_EQ(st.in_flight(), 0) << "seed " << seed << " wave " << wave;
      EXPECT_EQ(st.injected() - in0, st.delivered() - out0);
    }
  }
}

TEST(Properties, WorldUtilityIsSumOfWaveRewards) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Topology t = build_topology(test_support::random_dag_text(seed, 6));
    const int L = longest_path_length(t);
    RandomPolicy policy;
    const RunResult r = run(t, plain(L, 2 * L, 15), policy, seed, RunOptions{true});
    double sum = 0.0;
    for (double w : r.wave_rewards) sum += w;
    EXPECT_NEAR(world_utility(t, *r.trajectory), sum, 1e-9 * std::max(1.0, sum));
    // Same arithmetic path: world_reward over each wave's steps.
    for (std::size_t w = 0; w < r.wave_rewards.size(); ++w) {
      WaveSnapshot snap;
      snap.routers = r.trajectory->routers;
      snap.destinations = r.trajectory->destinations;
      snap.steps.assign(r.trajectory->steps.begin() + static_cast<long>(w) * L,
                        r.trajectory->steps.begin() + static_cast<long>(w + 1) * L);
      EXPECT_DOUBLE_EQ(world_reward(t, snap), r.wave_rewards[w]);
    }
  }
}

TEST(Properties, ThreeRouterChainDoubleSum) {
  const Topology t = build_topology(
      "node S affine 1 1\nnode M power 2 2\nnode E affine-log 3 1\nnode D zero\n"
      "edge S M\nedge M E\nedge E D\ndemand S D 2\n");
  AgentRouter ispa(AgentPolicy{});
  const RunResult r = run(t, plain(3, 6, 8), ispa, 1, RunOptions{true});
  // Direct double sum over (t, r) of z_r(t) V_r(Z_r(t)).
  double direct = 0.0;
  for (const auto& s : r.trajectory->steps) {
    for (std::size_t q = 0; q < t.router_count(); ++q) direct += s.x[q] * t.cost(static_cast<RouterId>(q))(s.X[q]);
  }
  double waves = 0.0;
  for (double w : r.wave_rewards) waves += w;
  EXPECT_NEAR(direct, waves, 1e-9);
  // Converged wave: every router sees 2 packets per wave.
  EXPECT_NEAR(r.wave_rewards.back(), 2 * (3.0 + 8.0 + 3.0 + std::log(3.0)), 1e-9);
}

TEST(SteadyState, HexNetAMatchesSymmetricSplit) {
  // V1(n/2) + V2(n/2) with V1 = 50 + x, V2 = 10x.
  const Topology a = test_support::load("hex-linear");
  for (int n = 1; n <= 4; ++n) {
    const double expected = 50.0 + n / 2.0 + 10.0 * n / 2.0;
    EXPECT_NEAR(per_packet_ispa(a.with_demand_packets(std::vector<int>{n})), expected, 0.1) << n;
  }
}

TEST(SteadyState, HexNetBMiddleRoute) {
  // All traffic on the added middle route: 10n + (10 + n) + 10n.
  const Topology b = test_support::load("hex-linear", Variant::kB);
  for (int n = 1; n <= 3; ++n) {
    EXPECT_NEAR(per_packet_ispa(b.with_demand_packets(std::vector<int>{n})), 21.0 * n + 10.0, 1e-9) << n;
  }
}
