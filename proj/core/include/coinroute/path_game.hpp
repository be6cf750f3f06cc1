#pragma once

#include <vector>

#include "coinroute/topology.hpp"

namespace coinroute {

/// Static congestion game over a topology: every demand packet is a
/// traveler choosing one source-to-destination path, and a traveler pays
/// Σ V_r(n_r) over the routers of its path, n_r counting the travelers
/// through r.
class PathGame {
 public:
  /// Throws TopologyError when a demand has no path.
  explicit PathGame(const Topology& topology);

  const Topology& topology() const { return topology_; }
  std::size_t traveler_count() const { return demand_of_.size(); }
  /// Demand index of each traveler.
  int demand_of(std::size_t traveler) const { return demand_of_.at(traveler); }
  /// Paths of a demand as router sequences, source first, in lexicographic order.
  const std::vector<std::vector<RouterId>>& paths(int demand) const {
    return paths_.at(static_cast<std::size_t>(demand));
  }
  const std::vector<RouterId>& path_of(std::size_t traveler, int choice) const {
    return paths(demand_of(traveler)).at(static_cast<std::size_t>(choice));
  }

  /// n_r for an assignment (one path index per traveler).
  std::vector<int> router_loads(const std::vector<int>& assignment) const;
  std::vector<double> traveler_costs(const std::vector<int>& assignment) const;
  double total_cost(const std::vector<int>& assignment) const;
  /// Cost `traveler` would pay on path `choice`, everyone else unchanged.
  double deviation_cost(const std::vector<int>& assignment, std::size_t traveler, int choice) const;
  /// No traveler can lower its cost by switching paths alone.
  bool is_equilibrium(const std::vector<int>& assignment, double tolerance = 1e-9) const;

 private:
  void check(const std::vector<int>& assignment) const;

  Topology topology_;
  std::vector<int> demand_of_;
  std::vector<std::vector<std::vector<RouterId>>> paths_;
};

/// Every simple path from `source` to `destination`.
std::vector<std::vector<RouterId>> enumerate_paths(const Topology& topology, RouterId source,
                                                   RouterId destination);

struct GameOutcome {
  std::vector<int> assignment;
  std::vector<double> costs;  // per traveler
  double total = 0.0;
  int rounds = 0;
};

/// Travelers enter one at a time on their cheapest path, then take turns
/// switching to a strictly cheaper path until nobody moves. Ties keep the
/// current path, or the lowest path index on entry. Throws
/// std::runtime_error if `max_rounds` passes without convergence.
GameOutcome best_response_dynamics(const PathGame& game, int max_rounds = 1000);

/// Every traveler picks the path that would be cheapest if it travelled
/// alone, all at once.
GameOutcome simultaneous_greedy(const PathGame& game);

/// Evaluates a given assignment.
GameOutcome evaluate(const PathGame& game, std::vector<int> assignment);

}  // namespace coinroute
