#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coinroute/cost.hpp"

namespace coinroute {

using RouterId = int;
inline constexpr RouterId kNoRouter = -1;

struct Demand {
  RouterId source = kNoRouter;
  RouterId destination = kNoRouter;
  int packets = 0;  // per wave
  friend bool operator==(const Demand&, const Demand&) = default;
};

/// A routing agent: the traffic at `router` bound for `destination`.
struct AgentKey {
  RouterId router = kNoRouter;
  RouterId destination = kNoRouter;
  friend auto operator<=>(const AgentKey&, const AgentKey&) = default;
};

/// Raised for structural problems: cycles on demand paths, unreachable
/// destinations, unknown router names, bad demands.
class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Directed router graph with per-router costs and per-wave demands.
/// Immutable once built; every accessor is const.
class Topology {
 public:
  std::size_t router_count() const { return names_.size(); }
  const std::string& name(RouterId r) const { return names_.at(static_cast<std::size_t>(r)); }
  std::optional<RouterId> find(std::string_view name) const;
  RouterId id(std::string_view name) const;  // throws TopologyError

  const LoadToCost& cost(RouterId r) const { return costs_.at(static_cast<std::size_t>(r)); }
  std::span<const RouterId> successors(RouterId r) const {
    return succ_.at(static_cast<std::size_t>(r));
  }
  bool has_link(RouterId from, RouterId to) const;
  std::vector<std::pair<RouterId, RouterId>> links() const;

  std::span<const Demand> demands() const { return demands_; }

  /// Distinct destinations, in order of first appearance among the demands.
  std::span<const RouterId> destinations() const { return destinations_; }
  std::size_t destination_count() const { return destinations_.size(); }
  /// Dense destination index, or -1 if `r` is not a destination.
  int destination_index(RouterId r) const { return dest_index_.at(static_cast<std::size_t>(r)); }

  /// True when some directed path leads from `from` to `to` (a router reaches itself).
  bool reaches(RouterId from, RouterId to) const;

  /// Next hops of `router` that still reach `destination`.
  std::span<const RouterId> candidates(RouterId router, int dest_index) const;

  /// Agents that can hold traffic: routers on a demand path, excluding the
  /// destination itself, with at least one candidate hop.
  std::span<const AgentKey> agents() const { return agents_; }
  /// Agents with more than one candidate hop.
  std::vector<AgentKey> decision_points() const;

  /// Same graph with the demand packet counts replaced (one entry per demand).
  Topology with_demand_packets(std::span<const int> packets) const;
  /// Same graph with every router cost multiplied by c > 0.
  Topology with_scaled_costs(double c) const;

  friend bool operator==(const Topology& lhs, const Topology& rhs);

 private:
  friend class TopologyBuilder;
  void finalize();

  std::vector<std::string> names_;
  std::vector<LoadToCost> costs_;
  std::vector<std::vector<RouterId>> succ_;
  std::vector<Demand> demands_;
  std::vector<RouterId> destinations_;
  std::vector<int> dest_index_;
  std::vector<std::vector<char>> reach_;                   // [from][to]
  std::vector<std::vector<std::vector<RouterId>>> cand_;   // [router][dest_index]
  std::vector<AgentKey> agents_;
};

class TopologyBuilder {
 public:
  RouterId add_router(std::string name, LoadToCost cost);
  void add_link(std::string_view from, std::string_view to);
  void add_demand(std::string_view source, std::string_view destination, int packets);
  /// Validates every structural invariant; throws TopologyError.
  Topology build() const;

 private:
  Topology topo_;
};

/// Variant A is the base network; variant B adds the `added` links.
enum class Variant { kA, kB };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

/// The raw contents of a scenario file.
///
///   name <text>
///   node <id> <form> <coeffs...>
///   edge <from> <to>
///   added <from> <to>              (variant B only)
///   demand <src> <dst> <packets-per-wave>
///   loads <n1> <n2> ...            (one table row, one count per demand)
///   steering <s1> <s2> ...
///   schedule L=<int|auto> W=<int> [warmup=<int>] [measure=<int>] [bootstrap=<int>] [seeds=<int>]
///
/// `#` starts a comment.
struct ScenarioText {
  std::string name;
  std::vector<std::pair<std::string, LoadToCost>> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::string, std::string>> added_edges;
  struct DemandLine {
    std::string source;
    std::string destination;
    int packets = 0;
  };
  std::vector<DemandLine> demands;
  std::vector<std::vector<int>> load_rows;
  std::vector<double> steering;
  std::map<std::string, std::string> schedule;  // key -> raw value
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ScenarioText parse_scenario_text(std::string_view text);

/// Builds and validates one variant of the network described by `text`.
Topology build_topology(std::string_view text, Variant variant = Variant::kA);
Topology build_topology(const ScenarioText& parsed, Variant variant = Variant::kA);

/// Scenario-file text (node/edge/demand lines) for `topology`;
/// build_topology(serialize(t)) == t.
std::string serialize(const Topology& topology);

/// Maximum over demands of the longest hop count from source to destination.
int longest_path_length(const Topology& topology);

std::string read_file(const std::string& path);

}  // namespace coinroute
