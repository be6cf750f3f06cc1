#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coinroute/schedule.hpp"
#include "coinroute/topology.hpp"

namespace coinroute {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Traffic and windowed loads at one processed time step. Both arrays are
/// indexed [router * destinations + destination_index].
struct StepRecord {
  long t = 0;
  std::vector<int> x;     // x_{r,d}(t), traffic present during the step
  std::vector<double> X;  // X_{r,d}(t), windowed per-destination load including step t
};

/// A contiguous run of processed steps.
struct Trajectory {
  std::size_t routers = 0;
  std::size_t destinations = 0;
  std::vector<StepRecord> steps;

  std::size_t index(RouterId r, int d) const {
    return static_cast<std::size_t>(r) * destinations + static_cast<std::size_t>(d);
  }
};

/// The steps of one wave.
struct WaveSnapshot : Trajectory {
  long wave = 0;
};

/// Per-step cost Σ_r z_r(t)·V_r(Z_r(t)).
double step_reward(const Topology& topology, const StepRecord& step, std::size_t destinations);

/// R_κ: summed step rewards of one wave.
double world_reward(const Topology& topology, const WaveSnapshot& wave);

/// G: total cost over a whole trajectory, evaluated term by term
/// (Σ_t Σ_{r,d} x_{r,d}(t)·V_r(Σ_d' X_{r,d'}(t))).
double world_utility(const Topology& topology, const Trajectory& trajectory);

/// Mutable simulation state: traffic present at the next step to process
/// and a W-step history window of x_{r,d}.
///
/// Windowed loads are expressed in packets per wave: the window sum of
/// x_{r,d} divided by the number of waves W/L the window spans.
class TrafficState {
 public:
  TrafficState(const Topology& topology, const WaveSchedule& schedule);

  long time() const { return t_; }
  std::size_t routers() const { return routers_; }
  std::size_t destinations() const { return dests_; }
  int window_waves() const { return window_waves_; }

  std::size_t index(RouterId r, int d) const {
    return static_cast<std::size_t>(r) * dests_ + static_cast<std::size_t>(d);
  }

  /// x_{r,d}(t) for the step about to be processed.
  int traffic(RouterId r, int d) const { return x_[index(r, d)]; }
  std::span<const int> traffic() const { return x_; }
  /// z_r(t) for the step about to be processed.
  int load(RouterId r) const;

  /// X_{r,d}(t-1): windowed load through the last processed step.
  double windowed(RouterId r, int d) const {
    return static_cast<double>(window_sum_[index(r, d)]) / window_waves_;
  }
  /// Z_r(t-1).
  double windowed_load(RouterId r) const;
  std::span<const long> window_sums() const { return window_sum_; }

  /// Adds packets at `router` bound for destination index `d` at the current step.
  void inject(RouterId router, int d, int packets);

  long injected() const { return injected_; }
  long delivered() const { return delivered_; }
  long in_flight() const;

  /// Recomputes window sums from the raw history; used to cross-check the
  /// incrementally maintained sums.
  std::vector<long> recompute_window_sums() const;

 private:
  friend struct StepEngine;

  std::size_t routers_;
  std::size_t dests_;
  int window_;
  int window_waves_;
  long t_ = 0;
  std::vector<int> x_;
  std::vector<int> history_;  // [slot][r*D+d], slot = t mod W
  std::vector<long> window_sum_;
  long injected_ = 0;
  long delivered_ = 0;
};

/// Split of x_{r,d}(t) across next hops.
struct Split {
  RouterId next = kNoRouter;
  int amount = 0;
};
/// One entry per [r*D+d]; empty where no traffic is present.
using SplitPlan = std::vector<std::vector<Split>>;

struct StepResult {
  StepRecord record;
  double cost = 0.0;
  long delivered = 0;
};

/// Processes the current step: folds x(t) into the window, accrues
/// Σ_r z_r(t)·V_r(Z_r(t)), and forwards traffic per `plan`. Packets reaching
/// their destination are delivered and leave circulation.
///
/// Throws SimulationError when traffic has no split, the split amounts do
/// not sum to x_{r,d}(t), or a next hop is not a linked router that still
/// reaches the destination.
StepResult step(TrafficState& state, const Topology& topology, const SplitPlan& plan);

/// Single-hop form of step(): hops[r*D+d] carries all of x_{r,d}(t).
StepResult step(TrafficState& state, const Topology& topology, std::span<const RouterId> hops);

/// Adds every demand at its source at the current step.
void inject_demands(TrafficState& state, const Topology& topology);

/// What a routing policy may observe when making a decision at step t.
struct DecisionContext {
  const Topology& topology;
  const WaveSchedule& schedule;
  const TrafficState& state;        // x(t) present, windows through t-1
  const WaveSnapshot& wave_so_far;  // steps of this wave already processed
  std::span<const RouterId> committed;  // hops fixed earlier this wave, else kNoRouter
  std::span<const RouterId> previous;   // each agent's most recent hop from earlier waves
  long wave = 0;
};

/// Decision rule for every (router, destination) agent of a run. The
/// simulator asks for one hop per agent per wave, the first time the agent
/// holds traffic in that wave; all agents deciding at the same step see the
/// same snapshot.
class RoutingPolicy {
 public:
  virtual ~RoutingPolicy() = default;
  virtual std::string name() const = 0;
  virtual void begin_run(const Topology& topology, const WaveSchedule& schedule,
                         std::uint64_t seed) = 0;
  virtual RouterId decide(const DecisionContext& ctx, AgentKey agent) = 0;
  virtual void end_wave(const Topology& /*topology*/, const WaveSnapshot& /*wave*/) {}
};

struct RunOptions {
  bool record_trajectory = false;
};

struct RunResult {
  double total_cost = 0.0;      // over measured waves
  long packets_injected = 0;    // over measured waves
  long packets_delivered = 0;   // over measured waves
  double per_packet_cost = 0.0;
  int waves_measured = 0;
  int measure_start = 0;
  std::vector<double> wave_rewards;  // R_κ for every wave of the run
  std::optional<Trajectory> trajectory;
};

/// Runs schedule.total_waves waves. Deterministic in (topology, schedule,
/// policy, seed). Throws SimulationError for topologies without demands or
/// when traffic is still in flight at the end of a wave.
RunResult run(const Topology& topology, const WaveSchedule& schedule, RoutingPolicy& policy,
              std::uint64_t seed, RunOptions options = {});

/// Continues the current wave from `state` with fixed hops and returns the
/// remaining steps; `state` is taken by value and discarded.
WaveSnapshot project_wave(TrafficState state, const Topology& topology,
                          const WaveSchedule& schedule, std::span<const RouterId> hops);

}  // namespace coinroute
