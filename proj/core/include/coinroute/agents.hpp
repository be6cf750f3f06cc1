#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coinroute/simulator.hpp"

namespace coinroute {

enum class Algorithm { kIspa, kFullKnowledge, kMemoryBased };

std::string_view to_string(Algorithm algorithm);
/// "ispa", "fk", "mb" (case-insensitive).
Algorithm parse_algorithm(std::string_view text);

/// Decision rule applied to every agent of a run.
struct AgentPolicy {
  Algorithm kind = Algorithm::kIspa;
  double steering = 0.0;  // MB only: probability of delegating a decision to FK

  /// "ISPA", "FK", "MB(0.5)".
  std::string label() const;
  void validate() const;  // steering in [0, 1]
};

// ---------------------------------------------------------------------------
// Shortest path

/// Cost of reaching `destination` from each router when every router r on
/// the way charges V_r(loads[r]); the router itself is included. Infinity
/// for routers that cannot reach the destination. Dijkstra over the
/// reversed graph.
std::vector<double> cost_to_destination(const Topology& topology, RouterId destination,
                                        std::span<const double> loads);

/// Candidate hops of `agent` whose path cost is minimal under frozen loads.
std::vector<RouterId> ispa_best_hops(const Topology& topology, AgentKey agent,
                                     std::span<const double> loads);

/// First hop of a minimum-cost path under the observed windowed loads
/// Z_r(t-1). Ties go uniformly at random through `tie_rng`, or to the
/// lowest router id when it is null. Throws SimulationError without a path.
RouterId ispa_decide(const Topology& topology, AgentKey agent, std::span<const double> loads,
                     std::mt19937_64* tie_rng);

/// Z_r(t-1) for every router.
std::vector<double> observed_loads(const TrafficState& state);

// ---------------------------------------------------------------------------
// Full-knowledge COIN

struct HopEstimate {
  RouterId hop = kNoRouter;
  double wlr = 0.0;  // cost form, lower is better
};

/// Exact WLR of the current wave for each candidate hop: the rest of the
/// wave is simulated from the current state with this agent on the
/// candidate, hops already fixed this wave kept, and every undecided agent
/// repeating its previous hop (or its shortest-path hop if it has none).
std::vector<HopEstimate> fk_evaluate(const DecisionContext& ctx, AgentKey agent);

/// Candidate with the lowest predicted WLR cost; ties uniformly at random.
RouterId fk_decide(const DecisionContext& ctx, AgentKey agent, std::mt19937_64& tie_rng);

// ---------------------------------------------------------------------------
// Memory-based COIN

struct TrainingExample {
  AgentKey agent;
  std::vector<double> input;  // windowed loads of the candidate hops
  RouterId action = kNoRouter;
  double outcome = 0.0;       // WLR of the wave, cost form
};

/// Single-nearest-neighbour memory of (input, action, outcome) triples.
class TrainingSet {
 public:
  void add(TrainingExample example);
  std::size_t size() const { return examples_.size(); }
  bool empty() const { return examples_.empty(); }
  std::span<const TrainingExample> examples() const { return examples_; }

  /// Nearest example by Euclidean distance over inputs, restricted to
  /// examples with `action` when given. Equal distances go to the most
  /// recent example. nullptr when nothing matches.
  const TrainingExample* nearest(std::span<const double> input,
                                 std::optional<RouterId> action = std::nullopt) const;

 private:
  std::vector<TrainingExample> examples_;
};

/// Candidate-hop windowed loads Z(t-1) with x_{r,d}(t)/(W/L), this step's
/// own traffic in per-wave units, added to the component of `hop`.
std::vector<double> hypothetical_input(const DecisionContext& ctx, AgentKey agent, RouterId hop);

/// Random streams of one run.
struct DecisionStreams {
  std::mt19937_64 ispa;
  std::mt19937_64 fk;
  std::mt19937_64 steering;
  std::mt19937_64 nearest;

  explicit DecisionStreams(std::uint64_t seed);
};

/// With probability `steering` (or when `training` is empty) defers to
/// fk_decide; otherwise estimates each hop's WLR by the outcome of the
/// nearest stored example for that hop (falling back to the globally
/// nearest example) and takes the lowest.
RouterId mb_decide(const DecisionContext& ctx, AgentKey agent, const TrainingSet& training,
                   double steering, DecisionStreams& streams);

// ---------------------------------------------------------------------------
// Policy driving a whole run

/// RoutingPolicy for ISPA, FK and MB. Waves before schedule.bootstrap_waves
/// are routed by ISPA for every algorithm; MB scores those decisions with
/// the WLR of their wave and starts from the resulting training sets.
class AgentRouter : public RoutingPolicy {
 public:
  explicit AgentRouter(AgentPolicy policy);

  std::string name() const override { return policy_.label(); }
  void begin_run(const Topology& topology, const WaveSchedule& schedule,
                 std::uint64_t seed) override;
  RouterId decide(const DecisionContext& ctx, AgentKey agent) override;
  void end_wave(const Topology& topology, const WaveSnapshot& wave) override;

  /// Appends an example; visible to the next decision of `agent`.
  void record_outcome(TrainingExample example);

  const std::map<AgentKey, TrainingSet>& training_sets() const { return training_; }
  /// Every example recorded so far, with the wave it was recorded in.
  const std::vector<std::pair<long, TrainingExample>>& history() const { return history_; }
  void keep_history(bool on) { keep_history_ = on; }

 private:
  AgentPolicy policy_;
  std::optional<DecisionStreams> streams_;
  std::map<AgentKey, TrainingSet> training_;
  std::vector<TrainingExample> pending_;
  std::vector<std::pair<long, TrainingExample>> history_;
  bool keep_history_ = false;
  WaveSchedule schedule_;
};

/// Runs ISPA for `waves` waves and returns the WLR-scored training sets.
/// Throws std::invalid_argument when waves < 1.
std::map<AgentKey, TrainingSet> bootstrap(const Topology& topology, WaveSchedule schedule,
                                          int waves, std::uint64_t seed);

}  // namespace coinroute
