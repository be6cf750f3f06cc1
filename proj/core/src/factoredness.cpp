#include "coinroute/factoredness.hpp"

#include <cmath>
#include <stdexcept>

#include "coinroute/simulator.hpp"

namespace coinroute {
namespace {

// Advances `joint` like an odometer; false once every combination is seen.
bool next_joint(std::vector<int>& joint, const std::vector<int>& counts) {
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (++joint[i] < counts[i]) return true;
    joint[i] = 0;
  }
  return false;
}

}  // namespace

int sign_of(double x, double tolerance) {
  if (x > tolerance) return 1;
  if (x < -tolerance) return -1;
  return 0;
}

SignRecord factoredness_probe(const EnumerableSystem& system, const PrivateUtility& utility,
                              std::size_t agent, std::span<const int> joint, int alternative) {
  if (agent >= system.action_counts.size() || alternative < 0 ||
      alternative >= system.action_counts[agent]) {
    throw std::out_of_range("probe agent or action out of range");
  }
  SignRecord rec;
  rec.agent = agent;
  rec.joint.assign(joint.begin(), joint.end());
  rec.alternative = alternative;
  std::vector<int> swapped = rec.joint;
  swapped[agent] = alternative;

  const auto before = system.dynamics(rec.joint);
  const auto after = system.dynamics(swapped);
  rec.delta_private = utility(agent, swapped, after) - utility(agent, rec.joint, before);
  rec.delta_world = system.world(after) - system.world(before);
  const double scale = 1e-9 * std::max({1.0, std::abs(system.world(after)), std::abs(system.world(before))});
  rec.agree = sign_of(rec.delta_private, scale) == sign_of(rec.delta_world, scale);
  return rec;
}

FactorednessReport probe_all(const EnumerableSystem& system, const PrivateUtility& utility) {
  FactorednessReport report;
  std::vector<int> joint(system.action_counts.size(), 0);
  do {
    for (std::size_t a = 0; a < joint.size(); ++a) {
      for (int alt = 0; alt < system.action_counts[a]; ++alt) {
        if (alt == joint[a]) continue;
        auto rec = factoredness_probe(system, utility, a, joint, alt);
        if (!rec.agree) ++report.violations;
        report.records.push_back(std::move(rec));
      }
    }
  } while (next_joint(joint, system.action_counts));
  return report;
}

PrivateUtility team_game_utility(const EnumerableSystem& system) {
  return [world = system.world](std::size_t, std::span<const int>, std::span<const double> state) {
    return world(state);
  };
}

std::vector<std::size_t> exact_effect_set(const EnumerableSystem& system, std::size_t agent,
                                          std::span<const int> joint) {
  std::vector<int> probe(joint.begin(), joint.end());
  probe[agent] = 0;
  const auto reference = system.dynamics(probe);
  std::vector<char> varies(reference.size(), 0);
  for (int a = 1; a < system.action_counts[agent]; ++a) {
    probe[agent] = a;
    const auto state = system.dynamics(probe);
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (state[i] != reference[i]) varies[i] = 1;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < varies.size(); ++i) {
    if (varies[i]) out.push_back(i);
  }
  return out;
}

PrivateUtility exact_effect_set_wlu(const EnumerableSystem& system) {
  return [system](std::size_t agent, std::span<const int> joint, std::span<const double> state) {
    std::vector<double> clamped(state.begin(), state.end());
    for (std::size_t i : exact_effect_set(system, agent, joint)) clamped[i] = 0.0;
    return system.world(state) - system.world(clamped);
  };
}

RoutingSystem one_wave_routing_system(const Topology& topology) {
  RoutingSystem out;
  out.agents = topology.decision_points();
  if (out.agents.empty()) throw std::invalid_argument("topology has no decision points");

  WaveSchedule schedule;
  schedule.wave_length = longest_path_length(topology);
  schedule.window = schedule.wave_length;
  schedule.total_waves = 1;
  for (const auto& a : out.agents) {
    out.system.action_counts.push_back(static_cast<int>(
        topology.candidates(a.router, topology.destination_index(a.destination)).size()));
  }

  const std::size_t R = topology.router_count();
  const std::size_t D = topology.destination_count();
  const std::size_t n = R * D;
  auto agents = out.agents;
  out.system.dynamics = [topology, schedule, agents, R, D, n](std::span<const int> joint) {
    std::vector<RouterId> hops(n, kNoRouter);
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t d = 0; d < D; ++d) {
        auto c = topology.candidates(static_cast<RouterId>(r), static_cast<int>(d));
        if (!c.empty()) hops[r * D + d] = c.front();
      }
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const int d = topology.destination_index(agents[i].destination);
      hops[static_cast<std::size_t>(agents[i].router) * D + static_cast<std::size_t>(d)] =
          topology.candidates(agents[i].router, d)[static_cast<std::size_t>(joint[i])];
    }
    TrafficState state(topology, schedule);
    inject_demands(state, topology);
    WaveSnapshot wave = project_wave(state, topology, schedule, hops);
    std::vector<double> zeta;
    zeta.reserve(wave.steps.size() * 2 * n);
    for (const auto& s : wave.steps) {
      for (int x : s.x) zeta.push_back(x);
      for (double X : s.X) zeta.push_back(X);
    }
    return zeta;
  };
  out.system.world = [topology, R, D, n](std::span<const double> zeta) {
    double total = 0.0;
    for (std::size_t base = 0; base + 2 * n <= zeta.size(); base += 2 * n) {
      for (std::size_t r = 0; r < R; ++r) {
        double windowed = 0.0;
        for (std::size_t d = 0; d < D; ++d) windowed += zeta[base + n + r * D + d];
        const auto& v = topology.cost(static_cast<RouterId>(r));
        for (std::size_t d = 0; d < D; ++d) {
          if (double x = zeta[base + r * D + d]; x != 0.0) total += x * v(windowed);
        }
      }
    }
    return total;
  };
  return out;
}

SharedRouterSystem shared_router_system(const LoadToCost& va, const LoadToCost& vb,
                                        const LoadToCost& vc) {
  SharedRouterSystem out;
  out.system.action_counts = {2, 2};
  out.system.dynamics = [](std::span<const int> joint) {
    const double x_a = joint[0] == 0 ? 1.0 : 0.0;
    const double y_b = joint[1] == 0 ? 1.0 : 0.0;
    return std::vector<double>{x_a, 1.0 - x_a, y_b, 1.0 - y_b};
  };
  out.system.world = [va, vb, vc](std::span<const double> z) {
    const double b = z[1] + z[2];
    return z[0] * va(z[0]) + b * vb(b) + z[3] * vc(z[3]);
  };
  out.own_cost = [va, vb, vc](std::size_t agent, std::span<const int>, std::span<const double> z) {
    const double b = z[1] + z[2];
    if (agent == 0) return z[0] * va(z[0]) + z[1] * vb(b);
    return z[2] * vb(b) + z[3] * vc(z[3]);
  };
  return out;
}

}  // namespace coinroute
