#include "coinroute/simulator.hpp"

#include <fmt/format.h>

namespace coinroute {

RunResult run(const Topology& topology, const WaveSchedule& schedule, RoutingPolicy& policy,
              std::uint64_t seed, RunOptions options) {
  schedule.validate();
  if (topology.demands().empty()) {
    throw SimulationError("topology has no demands; per-packet cost is undefined");
  }
  TrafficState state(topology, schedule);
  policy.begin_run(topology, schedule, seed);

  const std::size_t R = topology.router_count();
  const std::size_t D = topology.destination_count();
  const std::size_t n = R * D;
  std::vector<RouterId> previous(n, kNoRouter);
  std::vector<RouterId> committed(n, kNoRouter);
  std::vector<std::pair<std::size_t, RouterId>> batch;

  RunResult result;
  result.measure_start = schedule.measure_start;
  result.wave_rewards.reserve(static_cast<std::size_t>(schedule.total_waves));
  if (options.record_trajectory) result.trajectory = Trajectory{R, D, {}};

  for (long wave = 0; wave < schedule.total_waves; ++wave) {
    const long injected_before = state.injected();
    const long delivered_before = state.delivered();
    inject_demands(state, topology);
    std::fill(committed.begin(), committed.end(), kNoRouter);

    WaveSnapshot snap;
    snap.routers = R;
    snap.destinations = D;
    snap.wave = wave;
    snap.steps.reserve(static_cast<std::size_t>(schedule.wave_length));
    double wave_cost = 0.0;

    for (int s = 0; s < schedule.wave_length; ++s) {
      batch.clear();
      const DecisionContext ctx{topology, schedule, state, snap, committed, previous, wave};
      for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t d = 0; d < D; ++d) {
          const std::size_t i = r * D + d;
          const RouterId router = static_cast<RouterId>(r);
          if (state.traffic()[i] == 0 || committed[i] != kNoRouter) continue;
          if (router == topology.destinations()[d]) continue;
          AgentKey agent{router, topology.destinations()[d]};
          batch.emplace_back(i, policy.decide(ctx, agent));
        }
      }
      for (const auto& [i, hop] : batch) committed[i] = hop;

      StepResult sr = step(state, topology, std::span<const RouterId>(committed));
      wave_cost += sr.cost;
      snap.steps.push_back(std::move(sr.record));
    }

    if (state.in_flight() != 0) {
      throw SimulationError(fmt::format(
          "wave {}: {} packet(s) still in flight after L={} steps", wave, state.in_flight(),
          schedule.wave_length));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (committed[i] != kNoRouter) previous[i] = committed[i];
    }
    policy.end_wave(topology, snap);
    result.wave_rewards.push_back(wave_cost);

    if (wave >= schedule.measure_start) {
      result.total_cost += wave_cost;
      result.packets_injected += state.injected() - injected_before;
      result.packets_delivered += state.delivered() - delivered_before;
      ++result.waves_measured;
    }
    if (result.trajectory) {
      for (auto& st : snap.steps) result.trajectory->steps.push_back(std::move(st));
    }
  }

  if (result.packets_injected == 0) {
    throw SimulationError("no packets injected during measurement");
  }
  result.per_packet_cost = result.total_cost / static_cast<double>(result.packets_injected);
  return result;
}

WaveSnapshot project_wave(TrafficState state, const Topology& topology,
                          const WaveSchedule& schedule, std::span<const RouterId> hops) {
  WaveSnapshot out;
  out.routers = state.routers();
  out.destinations = state.destinations();
  out.wave = schedule.wave_of(state.time());
  const long end = schedule.wave_start(out.wave + 1);
  while (state.time() < end) out.steps.push_back(step(state, topology, hops).record);
  return out;
}

}  // namespace coinroute
