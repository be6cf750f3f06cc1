#pragma once

#include <functional>
#include <span>
#include <vector>

#include "coinroute/cost.hpp"
#include "coinroute/schedule.hpp"
#include "coinroute/topology.hpp"

namespace coinroute {

/// A finite multi-agent system small enough to enumerate: every joint
/// action maps deterministically to a state vector ζ, and world utility is
/// a function of ζ.
struct EnumerableSystem {
  std::vector<int> action_counts;
  std::function<std::vector<double>(std::span<const int> joint)> dynamics;
  std::function<double(std::span<const double> state)> world;
};

/// Private utility of `agent` at joint action `joint` with state `state`.
using PrivateUtility =
    std::function<double(std::size_t agent, std::span<const int> joint, std::span<const double> state)>;

/// Outcome of swapping one agent's action with everyone else held fixed.
struct SignRecord {
  std::size_t agent = 0;
  std::vector<int> joint;
  int alternative = 0;
  double delta_private = 0.0;
  double delta_world = 0.0;
  bool agree = true;
};

struct FactorednessReport {
  std::vector<SignRecord> records;
  std::size_t violations = 0;
  bool factored() const { return violations == 0; }
};

/// Sign of x with |x| <= tolerance read as 0.
int sign_of(double x, double tolerance = 1e-9);

/// Swaps `agent` from its action in `joint` to `alternative` and records
/// the signs of the private and world utility changes.
SignRecord factoredness_probe(const EnumerableSystem& system, const PrivateUtility& utility,
                              std::size_t agent, std::span<const int> joint, int alternative);

/// Every unilateral swap over every joint action.
FactorednessReport probe_all(const EnumerableSystem& system, const PrivateUtility& utility);

/// g = G for every agent.
PrivateUtility team_game_utility(const EnumerableSystem& system);

/// Components of ζ that change when `agent` varies its action with the
/// others held at `joint`.
std::vector<std::size_t> exact_effect_set(const EnumerableSystem& system, std::size_t agent,
                                          std::span<const int> joint);

/// WLU with the exact effect set, clamped to 0.
PrivateUtility exact_effect_set_wlu(const EnumerableSystem& system);

/// One-wave routing system over the decision points of `topology`: the
/// actions of each agent are its candidate hops, ζ is the flattened
/// (x, X) trajectory of the wave, and G is its accrued cost. The window is
/// one wave long. Throws if there are no decision points.
struct RoutingSystem {
  EnumerableSystem system;
  std::vector<AgentKey> agents;
};
RoutingSystem one_wave_routing_system(const Topology& topology);

/// Two sources X and Y, one packet each. X picks router A (action 0) or the
/// shared router B (action 1); Y picks B (action 0) or C (action 1).
/// ζ = (x_A, x_B, y_B, y_C) and
///   G = x_A V_A(x_A) + (x_B + y_B) V_B(x_B + y_B) + y_C V_C(y_C).
struct SharedRouterSystem {
  EnumerableSystem system;
  /// Cost of each source's own packet; G = g_X + g_Y.
  PrivateUtility own_cost;
};
SharedRouterSystem shared_router_system(const LoadToCost& va, const LoadToCost& vb,
                                        const LoadToCost& vc);

}  // namespace coinroute
