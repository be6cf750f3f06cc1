#include "coinroute/agents.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <queue>

#include <fmt/format.h>

#include "coinroute/utility.hpp"

namespace coinroute {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool ties(double value, double best) {
  return value - best <= 1e-9 * std::max(1.0, std::abs(best));
}

template <typename Rng>
std::size_t pick(std::size_t n, Rng& rng) {
  if (n == 1) return 0;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::span<const RouterId> candidates_of(const Topology& topology, AgentKey agent) {
  const int d = topology.destination_index(agent.destination);
  if (d < 0) throw SimulationError(fmt::format("'{}' is not a destination", topology.name(agent.destination)));
  return topology.candidates(agent.router, d);
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kIspa:
      return "ispa";
    case Algorithm::kFullKnowledge:
      return "fk";
    case Algorithm::kMemoryBased:
      return "mb";
  }
  return "ispa";
}

Algorithm parse_algorithm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ispa") return Algorithm::kIspa;
  if (lower == "fk") return Algorithm::kFullKnowledge;
  if (lower == "mb") return Algorithm::kMemoryBased;
  throw std::invalid_argument(fmt::format("unknown algorithm '{}' (ispa|fk|mb)", text));
}

std::string AgentPolicy::label() const {
  switch (kind) {
    case Algorithm::kIspa:
      return "ISPA";
    case Algorithm::kFullKnowledge:
      return "FK";
    case Algorithm::kMemoryBased:
      return fmt::format("MB({})", steering);
  }
  return "ISPA";
}

void AgentPolicy::validate() const {
  if (!(steering >= 0.0 && steering <= 1.0)) {
    throw std::invalid_argument(fmt::format("steering must lie in [0, 1], got {}", steering));
  }
}

// ---------------------------------------------------------------------------

std::vector<double> cost_to_destination(const Topology& topology, RouterId destination,
                                        std::span<const double> loads) {
  const std::size_t n = topology.router_count();
  if (loads.size() != n) throw std::invalid_argument("need one load per router");
  std::vector<std::vector<RouterId>> pred(n);
  for (const auto& [from, to] : topology.links()) pred[static_cast<std::size_t>(to)].push_back(from);

  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, RouterId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<std::size_t>(destination)] =
      topology.cost(destination)(loads[static_cast<std::size_t>(destination)]);
  queue.emplace(dist[static_cast<std::size_t>(destination)], destination);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (RouterId u : pred[static_cast<std::size_t>(v)]) {
      const double via = topology.cost(u)(loads[static_cast<std::size_t>(u)]) + d;
      if (via < dist[static_cast<std::size_t>(u)]) {
        dist[static_cast<std::size_t>(u)] = via;
        queue.emplace(via, u);
      }
    }
  }
  return dist;
}

std::vector<RouterId> ispa_best_hops(const Topology& topology, AgentKey agent,
                                     std::span<const double> loads) {
  auto cands = candidates_of(topology, agent);
  if (cands.empty()) {
    throw SimulationError(fmt::format("no path from {} to {}", topology.name(agent.router),
                                      topology.name(agent.destination)));
  }
  const auto dist = cost_to_destination(topology, agent.destination, loads);
  double best = kInf;
  for (RouterId c : cands) best = std::min(best, dist[static_cast<std::size_t>(c)]);
  std::vector<RouterId> out;
  for (RouterId c : cands) {
    if (ties(dist[static_cast<std::size_t>(c)], best)) out.push_back(c);
  }
  return out;
}

RouterId ispa_decide(const Topology& topology, AgentKey agent, std::span<const double> loads,
                     std::mt19937_64* tie_rng) {
  auto best = ispa_best_hops(topology, agent, loads);
  if (tie_rng == nullptr) return best.front();
  return best[pick(best.size(), *tie_rng)];
}

std::vector<double> observed_loads(const TrafficState& state) {
  std::vector<double> out(state.routers());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = state.windowed_load(static_cast<RouterId>(r));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<HopEstimate> fk_evaluate(const DecisionContext& ctx, AgentKey agent) {
  const Topology& topo = ctx.topology;
  auto cands = candidates_of(topo, agent);
  if (cands.empty()) {
    throw SimulationError(fmt::format("agent ({}, {}) has no candidate hops", topo.name(agent.router),
                                      topo.name(agent.destination)));
  }
  const std::size_t D = topo.destination_count();
  const int d = topo.destination_index(agent.destination);
  const std::size_t self = ctx.state.index(agent.router, d);

  std::vector<RouterId> hops(ctx.committed.begin(), ctx.committed.end());
  std::optional<std::vector<double>> loads;
  for (std::size_t i = 0; i < hops.size(); ++i) {
    if (hops[i] != kNoRouter) continue;
    const RouterId r = static_cast<RouterId>(i / D);
    const int di = static_cast<int>(i % D);
    if (topo.candidates(r, di).empty()) continue;
    if (ctx.previous[i] != kNoRouter) {
      hops[i] = ctx.previous[i];
    } else {
      if (!loads) loads = observed_loads(ctx.state);
      hops[i] = ispa_decide(topo, AgentKey{r, topo.destinations()[static_cast<std::size_t>(di)]},
                            *loads, nullptr);
    }
  }

  std::vector<HopEstimate> out;
  out.reserve(cands.size());
  for (RouterId c : cands) {
    hops[self] = c;
    WaveSnapshot wave = project_wave(ctx.state, topo, ctx.schedule, hops);
    wave.steps.insert(wave.steps.begin(), ctx.wave_so_far.steps.begin(), ctx.wave_so_far.steps.end());
    out.push_back(HopEstimate{c, wlr(topo, wave, d)});
  }
  return out;
}

RouterId fk_decide(const DecisionContext& ctx, AgentKey agent, std::mt19937_64& tie_rng) {
  auto cands = candidates_of(ctx.topology, agent);
  if (cands.size() == 1) return cands.front();
  const auto estimates = fk_evaluate(ctx, agent);
  double best = kInf;
  for (const auto& e : estimates) best = std::min(best, e.wlr);
  std::vector<RouterId> tied;
  for (const auto& e : estimates) {
    if (ties(e.wlr, best)) tied.push_back(e.hop);
  }
  return tied[pick(tied.size(), tie_rng)];
}

// ---------------------------------------------------------------------------

void TrainingSet::add(TrainingExample example) {
  if (!std::isfinite(example.outcome)) throw std::invalid_argument("training outcome must be finite");
  if (!examples_.empty() && example.input.size() != examples_.front().input.size()) {
    throw std::invalid_argument("training input has the wrong dimension");
  }
  examples_.push_back(std::move(example));
}

const TrainingExample* TrainingSet::nearest(std::span<const double> input,
                                            std::optional<RouterId> action) const {
  const TrainingExample* best = nullptr;
  double best_d2 = kInf;
  for (const auto& ex : examples_) {
    if (action && ex.action != *action) continue;
    double d2 = 0.0;
    for (std::size_t i = 0; i < input.size(); ++i) {
      const double diff = ex.input[i] - input[i];
      d2 += diff * diff;
    }
    if (d2 <= best_d2) {
      best_d2 = d2;
      best = &ex;
    }
  }
  return best;
}

std::vector<double> hypothetical_input(const DecisionContext& ctx, AgentKey agent, RouterId hop) {
  auto cands = candidates_of(ctx.topology, agent);
  const int d = ctx.topology.destination_index(agent.destination);
  const double own = static_cast<double>(ctx.state.traffic(agent.router, d)) / ctx.state.window_waves();
  std::vector<double> out;
  out.reserve(cands.size());
  for (RouterId c : cands) {
    out.push_back(ctx.state.windowed_load(c) + (c == hop ? own : 0.0));
  }
  return out;
}

DecisionStreams::DecisionStreams(std::uint64_t seed) {
  auto make = [seed](std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
  };
  ispa = make(1);
  fk = make(2);
  steering = make(3);
  nearest = make(4);
}

RouterId mb_decide(const DecisionContext& ctx, AgentKey agent, const TrainingSet& training,
                   double steering, DecisionStreams& streams) {
  auto cands = candidates_of(ctx.topology, agent);
  if (cands.size() == 1) return cands.front();
  const bool steer = std::bernoulli_distribution(steering)(streams.steering);
  if (steer || training.empty()) return fk_decide(ctx, agent, streams.fk);

  double best = kInf;
  std::vector<double> estimate(cands.size(), kInf);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto query = hypothetical_input(ctx, agent, cands[i]);
    const TrainingExample* ex = training.nearest(query, cands[i]);
    if (ex == nullptr) ex = training.nearest(query);
    estimate[i] = ex->outcome;
    best = std::min(best, estimate[i]);
  }
  std::vector<RouterId> tied;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (ties(estimate[i], best)) tied.push_back(cands[i]);
  }
  return tied[pick(tied.size(), streams.nearest)];
}

// ---------------------------------------------------------------------------

AgentRouter::AgentRouter(AgentPolicy policy) : policy_(policy) { policy_.validate(); }

void AgentRouter::begin_run(const Topology& /*topology*/, const WaveSchedule& schedule,
                            std::uint64_t seed) {
  streams_.emplace(seed);
  training_.clear();
  pending_.clear();
  history_.clear();
  schedule_ = schedule;
}

RouterId AgentRouter::decide(const DecisionContext& ctx, AgentKey agent) {
  auto cands = candidates_of(ctx.topology, agent);
  if (cands.size() == 1) return cands.front();

  RouterId hop = kNoRouter;
  const bool bootstrapping = ctx.wave < schedule_.bootstrap_waves;
  if (policy_.kind == Algorithm::kIspa || bootstrapping) {
    const auto loads = observed_loads(ctx.state);
    hop = ispa_decide(ctx.topology, agent, loads, &streams_->ispa);
  } else if (policy_.kind == Algorithm::kFullKnowledge) {
    hop = fk_decide(ctx, agent, streams_->fk);
  } else {
    hop = mb_decide(ctx, agent, training_[agent], policy_.steering, *streams_);
  }

  if (policy_.kind == Algorithm::kMemoryBased) {
    pending_.push_back(TrainingExample{agent, hypothetical_input(ctx, agent, hop), hop, 0.0});
  }
  return hop;
}

void AgentRouter::end_wave(const Topology& topology, const WaveSnapshot& wave) {
  if (pending_.empty()) return;
  std::vector<std::optional<double>> by_dest(topology.destination_count());
  for (auto& ex : pending_) {
    const int d = topology.destination_index(ex.agent.destination);
    auto& score = by_dest[static_cast<std::size_t>(d)];
    if (!score) score = wlr(topology, wave, d);
    ex.outcome = *score;
    if (keep_history_) history_.emplace_back(wave.wave, ex);
    record_outcome(std::move(ex));
  }
  pending_.clear();
}

void AgentRouter::record_outcome(TrainingExample example) {
  training_[example.agent].add(std::move(example));
}

namespace {

// Keeps the training sets as they stood after the last bootstrap wave; the
// schedule needs one measured wave past it.
class BootstrapRecorder : public RoutingPolicy {
 public:
  explicit BootstrapRecorder(int waves) : inner_(AgentPolicy{Algorithm::kMemoryBased, 0.0}), waves_(waves) {}

  std::string name() const override { return "bootstrap"; }
  void begin_run(const Topology& topology, const WaveSchedule& schedule, std::uint64_t seed) override {
    inner_.begin_run(topology, schedule, seed);
  }
  RouterId decide(const DecisionContext& ctx, AgentKey agent) override { return inner_.decide(ctx, agent); }
  void end_wave(const Topology& topology, const WaveSnapshot& wave) override {
    inner_.end_wave(topology, wave);
    if (wave.wave + 1 == waves_) sets_ = inner_.training_sets();
  }
  std::map<AgentKey, TrainingSet> take() { return std::move(sets_); }

 private:
  AgentRouter inner_;
  int waves_;
  std::map<AgentKey, TrainingSet> sets_;
};

}  // namespace

std::map<AgentKey, TrainingSet> bootstrap(const Topology& topology, WaveSchedule schedule,
                                          int waves, std::uint64_t seed) {
  if (waves < 1) throw std::invalid_argument("bootstrap needs at least one wave");
  schedule.bootstrap_waves = waves;
  schedule.measure_start = waves;
  schedule.total_waves = waves + 1;
  BootstrapRecorder recorder(waves);
  run(topology, schedule, recorder, seed);
  return recorder.take();
}

}  // namespace coinroute
