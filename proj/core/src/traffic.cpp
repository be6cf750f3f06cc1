#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "coinroute/simulator.hpp"

namespace coinroute {

double step_reward(const Topology& topology, const StepRecord& step, std::size_t destinations) {
  double cost = 0.0;
  const std::size_t routers = topology.router_count();
  for (std::size_t r = 0; r < routers; ++r) {
    long z = 0;
    double windowed = 0.0;
    for (std::size_t d = 0; d < destinations; ++d) {
      z += step.x[r * destinations + d];
      windowed += step.X[r * destinations + d];
    }
    if (z != 0) cost += static_cast<double>(z) * topology.cost(static_cast<RouterId>(r))(windowed);
  }
  return cost;
}

double world_reward(const Topology& topology, const WaveSnapshot& wave) {
  double total = 0.0;
  for (const auto& s : wave.steps) total += step_reward(topology, s, wave.destinations);
  return total;
}

double world_utility(const Topology& topology, const Trajectory& trajectory) {
  double total = 0.0;
  const std::size_t D = trajectory.destinations;
  for (const auto& s : trajectory.steps) {
    for (std::size_t r = 0; r < trajectory.routers; ++r) {
      double windowed = 0.0;
      for (std::size_t d = 0; d < D; ++d) windowed += s.X[r * D + d];
      const auto& v = topology.cost(static_cast<RouterId>(r));
      for (std::size_t d = 0; d < D; ++d) {
        if (int x = s.x[r * D + d]; x != 0) total += x * v(windowed);
      }
    }
  }
  return total;
}

// ---------------------------------------------------------------------------

TrafficState::TrafficState(const Topology& topology, const WaveSchedule& schedule)
    : routers_(topology.router_count()),
      dests_(topology.destination_count()),
      window_(schedule.window),
      window_waves_(schedule.window_waves()) {
  schedule.validate();
  x_.assign(routers_ * dests_, 0);
  history_.assign(static_cast<std::size_t>(window_) * routers_ * dests_, 0);
  window_sum_.assign(routers_ * dests_, 0);
}

int TrafficState::load(RouterId r) const {
  int z = 0;
  for (std::size_t d = 0; d < dests_; ++d) z += x_[index(r, static_cast<int>(d))];
  return z;
}

double TrafficState::windowed_load(RouterId r) const {
  long sum = 0;
  for (std::size_t d = 0; d < dests_; ++d) sum += window_sum_[index(r, static_cast<int>(d))];
  return static_cast<double>(sum) / window_waves_;
}

void TrafficState::inject(RouterId router, int d, int packets) {
  if (packets < 0) throw SimulationError("cannot inject a negative packet count");
  x_[index(router, d)] += packets;
  injected_ += packets;
}

long TrafficState::in_flight() const { return std::accumulate(x_.begin(), x_.end(), 0L); }

std::vector<long> TrafficState::recompute_window_sums() const {
  const std::size_t n = routers_ * dests_;
  std::vector<long> sums(n, 0);
  for (int slot = 0; slot < window_; ++slot) {
    for (std::size_t i = 0; i < n; ++i) sums[i] += history_[static_cast<std::size_t>(slot) * n + i];
  }
  return sums;
}

void inject_demands(TrafficState& state, const Topology& topology) {
  for (const auto& d : topology.demands()) {
    state.inject(d.source, topology.destination_index(d.destination), d.packets);
  }
}

// ---------------------------------------------------------------------------

struct StepEngine {
  template <typename Forward>
  static StepResult advance(TrafficState& s, const Topology& topology, Forward&& forward) {
    const std::size_t n = s.routers_ * s.dests_;
    const std::size_t slot = static_cast<std::size_t>(s.t_ % s.window_);
    StepResult out;
    out.record.t = s.t_;
    out.record.x = s.x_;
    out.record.X.resize(n);
    int* hist = s.history_.data() + slot * n;
    for (std::size_t i = 0; i < n; ++i) {
      s.window_sum_[i] += s.x_[i] - hist[i];
      hist[i] = s.x_[i];
      out.record.X[i] = static_cast<double>(s.window_sum_[i]) / s.window_waves_;
    }
    out.cost = step_reward(topology, out.record, s.dests_);

    std::vector<int> next(n, 0);
    for (std::size_t r = 0; r < s.routers_; ++r) {
      for (std::size_t d = 0; d < s.dests_; ++d) {
        const int amount = s.x_[r * s.dests_ + d];
        if (amount == 0) continue;
        const RouterId router = static_cast<RouterId>(r);
        const RouterId dest = topology.destinations()[d];
        if (router == dest) {
          // Only reachable if traffic was injected at its own destination.
          out.delivered += amount;
          continue;
        }
        forward(router, static_cast<int>(d), amount, [&](RouterId hop, int share) {
          if (hop == kNoRouter || !topology.has_link(router, hop) || !topology.reaches(hop, dest)) {
            throw SimulationError(fmt::format(
                "t={}: traffic at {} for {} sent to {} which is not a next hop toward it", s.t_,
                topology.name(router), topology.name(dest),
                hop == kNoRouter ? std::string("<none>") : topology.name(hop)));
          }
          if (hop == dest) {
            out.delivered += share;
          } else {
            next[static_cast<std::size_t>(hop) * s.dests_ + d] += share;
          }
        });
      }
    }
    s.x_ = std::move(next);
    s.delivered_ += out.delivered;
    ++s.t_;
    return out;
  }
};

StepResult step(TrafficState& state, const Topology& topology, const SplitPlan& plan) {
  if (plan.size() != state.routers() * state.destinations()) {
    throw SimulationError("split plan has the wrong shape");
  }
  return StepEngine::advance(
      state, topology, [&](RouterId r, int d, int amount, auto&& send) {
        const auto& splits = plan[state.index(r, d)];
        long total = 0;
        for (const auto& sp : splits) {
          if (sp.amount < 0) throw SimulationError("negative split amount");
          total += sp.amount;
        }
        if (total != amount) {
          throw SimulationError(fmt::format("t={}: splits at {} sum to {} but x = {}",
                                            state.time(), topology.name(r), total, amount));
        }
        for (const auto& sp : splits) {
          if (sp.amount > 0) send(sp.next, sp.amount);
        }
      });
}

StepResult step(TrafficState& state, const Topology& topology, std::span<const RouterId> hops) {
  if (hops.size() != state.routers() * state.destinations()) {
    throw SimulationError("hop table has the wrong shape");
  }
  return StepEngine::advance(state, topology, [&](RouterId r, int d, int amount, auto&& send) {
    send(hops[state.index(r, d)], amount);
  });
}

}  // namespace coinroute
