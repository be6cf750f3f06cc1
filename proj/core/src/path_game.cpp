#include "coinroute/path_game.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace coinroute {

std::vector<std::vector<RouterId>> enumerate_paths(const Topology& topology, RouterId source,
                                                   RouterId destination) {
  std::vector<std::vector<RouterId>> out;
  std::vector<RouterId> path{source};
  std::vector<char> on_path(topology.router_count(), 0);
  on_path[static_cast<std::size_t>(source)] = 1;
  auto walk = [&](auto&& self, RouterId r) -> void {
    if (r == destination) {
      out.push_back(path);
      return;
    }
    for (RouterId next : topology.successors(r)) {
      if (on_path[static_cast<std::size_t>(next)] || !topology.reaches(next, destination)) continue;
      on_path[static_cast<std::size_t>(next)] = 1;
      path.push_back(next);
      self(self, next);
      path.pop_back();
      on_path[static_cast<std::size_t>(next)] = 0;
    }
  };
  walk(walk, source);
  std::sort(out.begin(), out.end());
  return out;
}

PathGame::PathGame(const Topology& topology) : topology_(topology) {
  const auto demands = topology_.demands();
  for (std::size_t i = 0; i < demands.size(); ++i) {
    auto paths = enumerate_paths(topology_, demands[i].source, demands[i].destination);
    if (paths.empty()) {
      throw TopologyError(fmt::format("no path from {} to {}", topology_.name(demands[i].source),
                                      topology_.name(demands[i].destination)));
    }
    paths_.push_back(std::move(paths));
    demand_of_.insert(demand_of_.end(), static_cast<std::size_t>(demands[i].packets),
                      static_cast<int>(i));
  }
}

void PathGame::check(const std::vector<int>& assignment) const {
  if (assignment.size() != traveler_count()) {
    throw std::invalid_argument(
        fmt::format("assignment has {} entries for {} travelers", assignment.size(), traveler_count()));
  }
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int choice = assignment[i];
    if (choice < 0 || static_cast<std::size_t>(choice) >= paths(demand_of(i)).size()) {
      throw std::out_of_range(fmt::format("traveler {} has no path {}", i, choice));
    }
  }
}

std::vector<int> PathGame::router_loads(const std::vector<int>& assignment) const {
  check(assignment);
  std::vector<int> loads(topology_.router_count(), 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    for (RouterId r : path_of(i, assignment[i])) ++loads[static_cast<std::size_t>(r)];
  }
  return loads;
}

std::vector<double> PathGame::traveler_costs(const std::vector<int>& assignment) const {
  const auto loads = router_loads(assignment);
  std::vector<double> out(assignment.size(), 0.0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    for (RouterId r : path_of(i, assignment[i])) out[i] += topology_.cost(r)(loads[static_cast<std::size_t>(r)]);
  }
  return out;
}

double PathGame::total_cost(const std::vector<int>& assignment) const {
  double total = 0.0;
  for (double c : traveler_costs(assignment)) total += c;
  return total;
}

double PathGame::deviation_cost(const std::vector<int>& assignment, std::size_t traveler,
                                int choice) const {
  auto loads = router_loads(assignment);
  for (RouterId r : path_of(traveler, assignment.at(traveler))) --loads[static_cast<std::size_t>(r)];
  double cost = 0.0;
  for (RouterId r : path_of(traveler, choice)) cost += topology_.cost(r)(loads[static_cast<std::size_t>(r)] + 1);
  return cost;
}

bool PathGame::is_equilibrium(const std::vector<int>& assignment, double tolerance) const {
  const auto costs = traveler_costs(assignment);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int n = static_cast<int>(paths(demand_of(i)).size());
    for (int c = 0; c < n; ++c) {
      if (deviation_cost(assignment, i, c) < costs[i] - tolerance) return false;
    }
  }
  return true;
}

GameOutcome evaluate(const PathGame& game, std::vector<int> assignment) {
  GameOutcome out;
  out.costs = game.traveler_costs(assignment);
  for (double c : out.costs) out.total += c;
  out.assignment = std::move(assignment);
  return out;
}

GameOutcome best_response_dynamics(const PathGame& game, int max_rounds) {
  const std::size_t n = game.traveler_count();
  std::vector<int> assignment;
  assignment.reserve(n);
  std::vector<int> loads(game.topology().router_count(), 0);
  // Entry: each newcomer sees only the travelers already placed.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& paths = game.paths(game.demand_of(i));
    int best = 0;
    double best_cost = 0.0;
    for (std::size_t c = 0; c < paths.size(); ++c) {
      double cost = 0.0;
      for (RouterId r : paths[c]) cost += game.topology().cost(r)(loads[static_cast<std::size_t>(r)] + 1);
      if (c == 0 || cost < best_cost - 1e-9) {
        best = static_cast<int>(c);
        best_cost = cost;
      }
    }
    for (RouterId r : paths[static_cast<std::size_t>(best)]) ++loads[static_cast<std::size_t>(r)];
    assignment.push_back(best);
  }

  for (int round = 1; round <= max_rounds; ++round) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double current = game.deviation_cost(assignment, i, assignment[i]);
      const int options = static_cast<int>(game.paths(game.demand_of(i)).size());
      int best = assignment[i];
      double best_cost = current;
      for (int c = 0; c < options; ++c) {
        const double cost = game.deviation_cost(assignment, i, c);
        if (cost < best_cost - 1e-9) {
          best = c;
          best_cost = cost;
        }
      }
      if (best != assignment[i]) {
        assignment[i] = best;
        moved = true;
      }
    }
    if (!moved) {
      auto out = evaluate(game, std::move(assignment));
      out.rounds = round;
      return out;
    }
  }
  throw std::runtime_error(fmt::format("best response did not converge in {} rounds", max_rounds));
}

GameOutcome simultaneous_greedy(const PathGame& game) {
  const std::size_t n = game.traveler_count();
  std::vector<int> assignment(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& paths = game.paths(game.demand_of(i));
    double best_cost = 0.0;
    for (std::size_t c = 0; c < paths.size(); ++c) {
      double cost = 0.0;
      for (RouterId r : paths[c]) cost += game.topology().cost(r)(1.0);
      if (c == 0 || cost < best_cost - 1e-9) {
        assignment[i] = static_cast<int>(c);
        best_cost = cost;
      }
    }
  }
  auto out = evaluate(game, std::move(assignment));
  out.rounds = 1;
  return out;
}

}  // namespace coinroute
