// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "coinroute/agents.hpp"
#include "coinroute/factoredness.hpp"
#include "coinroute/harness.hpp"
#include "coinroute/lb_analysis.hpp"
#include "coinroute/path_game.hpp"
#include "coinroute/utility.hpp"

using namespace coinroute;

namespace {

// Pinned tolerances.
constexpr double kWorkedExampleTol = 1e-3;
constexpr double kThresholdTol = 1e-3;
constexpr long kThresholdMinSteps = 100000;
constexpr double kHexTol = 0.5;
constexpr double kBraessTol = 0.5;
constexpr double kWindowTol = 1e-12;
constexpr double kUtilityTol = 1e-9;

std::string scenario_path(const std::string& name) {
  return std::string(COINROUTE_SCENARIO_DIR) + "/" + name + ".scn";
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Verdict()> check;
};

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<std::uint64_t> seed_list(int n) {
  std::vector<std::uint64_t> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 1);
  return s;
}

// ---------------------------------------------------------------------------

Verdict worked_example() {
  Verdict v;
  const auto ca = LoadToCost::power(1, 2);
  const auto cb = LoadToCost::affine(0, 1);
  const int W = 1000;
  const BoundsReport r = verdict(ca, cb, W);
  const double ub = upper_bound(ca, cb, W, r.k_prime);
  v.note(fmt::format("k_lb/W={:.4f} k'/W={:.4f} lower(k_lb)={:.4f} upper(k')={:.4f} suboptimal={}", r.k_lb / W,
                     r.k_prime / W, r.lb_lower_bound, ub, r.suboptimal));
  v.require(std::abs(r.k_lb / W - 0.618) <= kWorkedExampleTol, "k_lb/W");
  v.require(std::abs(r.k_prime / W - 0.548) <= kWorkedExampleTol, "k'/W");
  v.require(std::abs(k_prime_quadratic_linear(W) - r.k_prime / W) <= 1e-6, "k'/W closed form");
  v.require(std::abs(r.lb_lower_bound - 0.380) <= kWorkedExampleTol, "lower bound");
  v.require(std::abs(ub - 0.371) <= kWorkedExampleTol, "upper bound");
  v.require(r.suboptimal, "verdict");
  return v;
}

LoadToCost random_monotone(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return LoadToCost::affine(u(rng), 0.5 + 2 * u(rng));
    case 1:
      return LoadToCost::power(0.5 + 2 * u(rng), 1 + 2 * u(rng));
    default:
      return LoadToCost::affine_log(u(rng), 0.5 + 2 * u(rng));
  }
}

Verdict threshold_oracle() {
  Verdict v;
  struct Case {
    LoadToCost ca, cb;
    int W;
  };
  std::vector<Case> cases{{LoadToCost::power(1, 2), LoadToCost::affine(0, 1), 1000}};
  std::mt19937_64 rng(2024);
  while (cases.size() < 11) {
    Case c{random_monotone(rng), random_monotone(rng), std::uniform_int_distribution<int>(50, 2000)(rng)};
    try {
      solve_klb(c.ca, c.cb, c.W);
    } catch (const BoundsError&) {
      continue;  // no crossing on (1, W - 1)
    }
    cases.push_back(c);
  }
  int checked = 0;
  double worst = 0.0;
  for (const auto& c : cases) {
    const double k_lb = solve_klb(c.ca, c.cb, c.W);
    const double k_opt = argmin_upper(c.ca, c.cb, c.W).k;
    for (double k : {k_lb, k_opt}) {
      const long burn = 2L * c.W;
      // Whole windows after the burn-in.
      const long steps = burn + c.W * ((kThresholdMinSteps + c.W - 1) / c.W);
      const ThresholdRun run = simulate_threshold(ThresholdModel{c.ca, c.cb, c.W, k}, steps, burn);
      const double lo = lower_bound(c.ca, c.cb, c.W, k);
      const double hi = upper_bound(c.ca, c.cb, c.W, k);
      worst = std::max({worst, lo - run.average_cost, run.average_cost - hi});
      v.require(run.average_cost >= lo - kThresholdTol && run.average_cost <= hi + kThresholdTol,
                fmt::format("{} vs {} W={} k={:.3f}: {:.6f} outside [{:.6f}, {:.6f}]", to_string(c.ca),
                            to_string(c.cb), c.W, k, run.average_cost, lo, hi));
      ++checked;
    }
  }
  v.note(fmt::format("{} runs, worst excursion {:.2e}", checked, std::max(0.0, worst)));
  return v;
}

Verdict braess_equilibria() {
  Verdict v;
  const Topology a = build_topology(read_file(scenario_path("braess-figure2")), Variant::kA);
  const Topology b = build_topology(read_file(scenario_path("braess-figure2")), Variant::kB);
  auto costs = [](const Topology& t, int n) {
    const PathGame game(t.with_demand_packets(std::vector<int>{n}));
    const GameOutcome out = best_response_dynamics(game);
    if (!game.is_equilibrium(out.assignment)) throw std::runtime_error("not an equilibrium");
    return out.costs;
  };
  auto all_equal = [](const std::vector<double>& c, double want) {
    return std::all_of(c.begin(), c.end(), [&](double x) { return x == want; });
  };
  const auto a1 = costs(a, 1), a6 = costs(a, 6), b1 = costs(b, 1), b6 = costs(b, 6);
  v.note(fmt::format("A:1 -> {}, A:6 -> {}, B:1 -> {}, B:6 -> {}", a1[0], a6[0], b1[0], b6[0]));
  v.require(all_equal(a1, 61), "A with 1 traveler");
  v.require(all_equal(a6, 83), "A with 6 travelers");
  v.require(all_equal(b1, 31), "B with 1 traveler");
  v.require(all_equal(b6, 92), "B with 6 travelers");
  return v;
}

Verdict shared_link() {
  Verdict v;
  const PathGame game(build_topology(read_file(scenario_path("two-router-shared-link"))));
  const GameOutcome greedy = simultaneous_greedy(game);
  // Each source's alternate is the path avoiding SH.
  const RouterId sh = game.topology().id("SH");
  std::vector<int> alternates;
  for (std::size_t i = 0; i < game.traveler_count(); ++i) {
    const auto& paths = game.paths(game.demand_of(i));
    for (std::size_t p = 0; p < paths.size(); ++p) {
      if (std::find(paths[p].begin(), paths[p].end(), sh) == paths[p].end()) {
        alternates.push_back(static_cast<int>(p));
        break;
      }
    }
  }
  const GameOutcome coordinated = evaluate(game, alternates);
  v.note(fmt::format("greedy {} each / {} total, alternates {} each / {} total", greedy.costs[0], greedy.total,
                     coordinated.costs[0], coordinated.total));
  v.require(greedy.costs == std::vector<double>{4, 4} && greedy.total == 8, "greedy costs");
  v.require(coordinated.costs == std::vector<double>{2, 2} && coordinated.total == 4, "alternate costs");
  return v;
}

Verdict hex_ispa() {
  Verdict v;
  const Scenario s = load_scenario(scenario_path("hex-linear"));
  const AgentPolicy ispa{};
  const std::vector<double> want_a{55.5, 61.0, 66.5, 72.0};
  const std::vector<double> want_b{31.0, 52.0, 73.0};
  std::string got;
  auto check = [&](Variant variant, int n, double want) {
    const Topology t = s.network(variant, {n});
    const auto costs = run_seeds(t, s.schedule(t), ispa, seed_list(s.seeds));
    const auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
    got += fmt::format(" {}{}={:.2f}", to_string(variant), n, mean(costs));
    v.require(std::abs(*lo - want) <= kHexTol && std::abs(*hi - want) <= kHexTol,
              fmt::format("{} load {}: seeds span [{:.3f}, {:.3f}], want {:.2f}", to_string(variant), n, *lo, *hi,
                          want));
  };
  for (int n = 1; n <= 4; ++n) check(Variant::kA, n, want_a[static_cast<std::size_t>(n - 1)]);
  for (int n = 1; n <= 3; ++n) check(Variant::kB, n, want_b[static_cast<std::size_t>(n - 1)]);
  v.note(fmt::format("{} seeds, means:{}", s.seeds, got));
  return v;
}

Verdict braess_flags() {
  Verdict v;
  auto flags_for = [](const std::string& name, std::vector<AgentPolicy> roster) {
    Scenario s = load_scenario(scenario_path(name));
    s.roster = std::move(roster);
    return braess_report(run_scenario(s), kBraessTol);
  };
  auto describe = [](const BraessFlag& f) {
    std::string load;
    for (int n : f.load) load += (load.empty() ? "" : " ") + std::to_string(n);
    return fmt::format("{} [{}] A={:.2f} B={:.2f} {}", f.algorithm, load, f.cost_a, f.cost_b, to_string(f.verdict));
  };

  const AgentPolicy ispa{};
  const AgentPolicy mb{Algorithm::kMemoryBased, 0.5};

  for (const auto& f : flags_for("hex-linear", {ispa, mb})) {
    const int load = f.load[0];
    if (f.algorithm == "ISPA" && load >= 3) {
      v.require(f.verdict == BraessClass::kParadox, "hex-linear " + describe(f));
    }
    if (f.algorithm == "MB(0.5)") v.require(f.verdict != BraessClass::kParadox, "hex-linear " + describe(f));
  }
  for (const auto& f : flags_for("hex-log", {mb})) {
    v.require(f.verdict != BraessClass::kParadox, "hex-log " + describe(f));
  }
  int paradox_rows = 0;
  const auto bootes = flags_for("bootes2", {ispa});
  for (const auto& f : bootes) paradox_rows += f.verdict == BraessClass::kParadox;
  v.require(paradox_rows >= 3, fmt::format("bootes2 ISPA PARADOX in {} of {} rows", paradox_rows, bootes.size()));
  bool six = false;
  for (const auto& f : flags_for("braess-figure2", {ispa})) {
    if (f.load[0] == 6) {
      six = true;
      v.require(f.verdict == BraessClass::kParadox, "braess-figure2 " + describe(f));
    }
  }
  v.require(six, "braess-figure2 has no 6-traveler row");
  v.note(fmt::format("bootes2 ISPA PARADOX rows {}/{}", paradox_rows, bootes.size()));
  return v;
}

Verdict steering_endpoints() {
  Verdict v;
  const Scenario s = load_scenario(scenario_path("ray"));
  const auto seeds = seed_list(s.seeds);

  // Steering 1 against FK, seed by seed, on ray and on hex-linear.
  std::vector<std::pair<Topology, WaveSchedule>> nets;
  {
    const Topology t = s.network(Variant::kB, s.loads.front());
    nets.emplace_back(t, s.schedule(t));
    const Scenario hex = load_scenario(scenario_path("hex-linear"));
    const Topology h = hex.network(Variant::kB, {4});
    nets.emplace_back(h, hex.schedule(h));
  }
  for (const auto& [t, sched] : nets) {
    const auto fk = run_seeds(t, sched, AgentPolicy{Algorithm::kFullKnowledge}, seeds);
    const auto mb1 = run_seeds(t, sched, AgentPolicy{Algorithm::kMemoryBased, 1.0}, seeds);
    v.require(fk == mb1, "steering 1 differs from FK");
  }

  // Orderings on the heaviest ray row of network B.
  const auto heaviest = *std::max_element(s.loads.begin(), s.loads.end(), [](const auto& x, const auto& y) {
    return std::accumulate(x.begin(), x.end(), 0) < std::accumulate(y.begin(), y.end(), 0);
  });
  const Topology t = s.network(Variant::kB, heaviest);
  const WaveSchedule sched = s.schedule(t);
  const double ispa = mean(run_seeds(t, sched, AgentPolicy{}, seeds));
  std::string got = fmt::format("ISPA={:.2f}", ispa);
  for (double st : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double m = mean(run_seeds(t, sched, AgentPolicy{Algorithm::kMemoryBased, st}, seeds));
    got += fmt::format(" MB({})={:.2f}", st, m);
    if (st == 0.0) {
      v.require(m > ispa, fmt::format("MB(0) {:.2f} not worse than ISPA {:.2f}", m, ispa));
    } else {
      v.require(m < ispa, fmt::format("MB({}) {:.2f} not better than ISPA {:.2f}", st, m, ispa));
    }
  }
  v.note(fmt::format("ray B load {}/{}: {}", heaviest[0], heaviest[1], got));
  return v;
}

// Routing systems from small random DAGs plus random abstract systems.
std::vector<EnumerableSystem> small_systems() {
  std::vector<EnumerableSystem> out;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto small = [](const EnumerableSystem& s) {
    return s.action_counts.size() <= 3 &&
           std::all_of(s.action_counts.begin(), s.action_counts.end(), [](int c) { return c <= 3; });
  };
  for (const char* name : {"hex-linear", "braess-figure2", "two-router-shared-link", "bootes4", "bootes2"}) {
    for (Variant var : {Variant::kA, Variant::kB}) {
      const ScenarioText text = parse_scenario_text(read_file(scenario_path(name)));
      if (var == Variant::kB && text.added_edges.empty()) continue;
      const Topology t = build_topology(text, var);
      if (t.decision_points().empty()) continue;
      auto rs = one_wave_routing_system(t);
      if (small(rs.system)) out.push_back(std::move(rs.system));
    }
  }
  for (int trial = 0; out.size() < 150 && trial < 5000; ++trial) {
    const int n = 4 + static_cast<int>(u(rng) * 4);
    std::string text;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || i == n - 1) {
        text += fmt::format("node n{} zero\n", i);
      } else if (u(rng) < 0.5) {
        text += fmt::format("node n{} affine {} {}\n", i, std::floor(u(rng) * 10), 1 + std::floor(u(rng) * 5));
      } else {
        text += fmt::format("node n{} power {} 2\n", i, 1 + std::floor(u(rng) * 3));
      }
    }
    for (int i = 0; i + 1 < n; ++i) {
      text += fmt::format("edge n{} n{}\n", i, i + 1);
      for (int j = i + 2; j < n; ++j) {
        if (u(rng) < 0.45) text += fmt::format("edge n{} n{}\n", i, j);
      }
    }
    text += fmt::format("demand n0 n{} {}\n", n - 1, 1 + static_cast<int>(u(rng) * 3));
    if (u(rng) < 0.5) text += fmt::format("demand n1 n{} {}\n", n - 2, 1 + static_cast<int>(u(rng) * 2));
    const Topology t = build_topology(text);
    if (t.decision_points().empty()) continue;
    auto rs = one_wave_routing_system(t);
    if (small(rs.system)) out.push_back(std::move(rs.system));
  }
  // Abstract systems: every agent adds a random vector per action to ζ and
  // G is a random convex quadratic of ζ.
  for (int trial = 0; trial < 100; ++trial) {
    const int agents = 1 + static_cast<int>(u(rng) * 3);
    std::vector<int> counts;
    for (int a = 0; a < agents; ++a) counts.push_back(1 + static_cast<int>(u(rng) * 3));
    const std::size_t dim = 4;
    std::vector<std::vector<std::vector<double>>> effect(static_cast<std::size_t>(agents));
    for (int a = 0; a < agents; ++a) {
      for (int c = 0; c < counts[static_cast<std::size_t>(a)]; ++c) {
        std::vector<double> e(dim);
        for (auto& x : e) x = u(rng) < 0.5 ? 0.0 : std::floor(u(rng) * 4);
        effect[static_cast<std::size_t>(a)].push_back(e);
      }
    }
    std::vector<double> w(dim);
    for (auto& x : w) x = 0.5 + u(rng);
    EnumerableSystem s;
    s.action_counts = counts;
    s.dynamics = [effect, dim](std::span<const int> joint) {
      std::vector<double> z(dim, 0.0);
      for (std::size_t a = 0; a < joint.size(); ++a) {
        const auto& e = effect[a][static_cast<std::size_t>(joint[a])];
        for (std::size_t i = 0; i < dim; ++i) z[i] += e[i];
      }
      return z;
    };
    s.world = [w](std::span<const double> z) {
      double g = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) g += w[i] * z[i] * z[i] + z[i];
      return g;
    };
    out.push_back(std::move(s));
  }
  return out;
}

Verdict factoredness_suite() {
  Verdict v;
  const auto systems = small_systems();
  std::size_t swaps = 0, wlu_violations = 0, team_violations = 0;
  for (const auto& s : systems) {
    const auto wlu = probe_all(s, exact_effect_set_wlu(s));
    const auto team = probe_all(s, team_game_utility(s));
    swaps += wlu.records.size();
    wlu_violations += wlu.violations;
    team_violations += team.violations;
  }
  v.require(wlu_violations == 0, fmt::format("{} exact-WLU violations", wlu_violations));
  v.require(team_violations == 0, fmt::format("{} team-game violations", team_violations));

  // Own-cost decomposition on the bundled shared-link costs, then on costs
  // where X benefits from crowding Y.
  const Topology shared = build_topology(read_file(scenario_path("two-router-shared-link")));
  const auto literal = shared_router_system(shared.cost(shared.id("AX")), shared.cost(shared.id("SH")),
                                            shared.cost(shared.id("AY")));
  const auto literal_report = probe_all(literal.system, literal.own_cost);
  const auto skewed = shared_router_system(LoadToCost::affine(5, 0), LoadToCost::power(1, 2), LoadToCost::affine(2, 0));
  const auto skewed_report = probe_all(skewed.system, skewed.own_cost);
  std::size_t gx = 0;
  for (const auto& r : skewed_report.records) gx += r.agent == 0 && !r.agree;
  v.require(gx >= 1, "no g_X violation");
  v.note(fmt::format("{} systems, {} swaps; own-cost violations: bundled costs {}, skewed costs {} (g_X {})",
                     systems.size(), swaps, literal_report.violations, skewed_report.violations, gx));
  return v;
}

Verdict model_identities() {
  Verdict v;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int snapshots = 0;
  double worst_window = 0.0, worst_g = 0.0, worst_wlr = 0.0;
  long conservation_failures = 0;
  for (int net = 0; net < 20; ++net) {
    const int n = 5 + static_cast<int>(u(rng) * 4);
    std::string text;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || i == n - 1) {
        text += fmt::format("node n{} zero\n", i);
      } else if (u(rng) < 0.5) {
        text += fmt::format("node n{} affine-log {} {}\n", i, std::floor(u(rng) * 20), 1 + std::floor(u(rng) * 3));
      } else {
        text += fmt::format("node n{} power {} 2\n", i, 1 + std::floor(u(rng) * 3));
      }
    }
    for (int i = 0; i + 1 < n; ++i) {
      text += fmt::format("edge n{} n{}\n", i, i + 1);
      for (int j = i + 2; j < n; ++j) {
        if (u(rng) < 0.4) text += fmt::format("edge n{} n{}\n", i, j);
      }
    }
    text += fmt::format("demand n0 n{} {}\n", n - 1, 1 + static_cast<int>(u(rng) * 3));
    text += fmt::format("demand n1 n{} {}\n", n - 2, 1 + static_cast<int>(u(rng) * 3));
    const Topology t = build_topology(text);

    WaveSchedule sched;
    sched.wave_length = longest_path_length(t);
    sched.window = sched.wave_length * (1 + static_cast<int>(u(rng) * 3));
    sched.total_waves = 5;
    const int L = sched.wave_length;
    const std::size_t D = t.destination_count();
    TrafficState state(t, sched);
    Trajectory traj;
    traj.routers = t.router_count();
    traj.destinations = D;
    std::vector<double> rewards;
    for (int wave = 0; wave < sched.total_waves; ++wave) {
      const long in0 = state.injected(), out0 = state.delivered();
      inject_demands(state, t);
      std::vector<RouterId> hops(t.router_count() * D, kNoRouter);
      WaveSnapshot snap;
      snap.routers = traj.routers;
      snap.destinations = D;
      snap.wave = wave;
      for (int k = 0; k < L; ++k) {
        for (const auto& a : t.agents()) {
          const int d = t.destination_index(a.destination);
          const std::size_t i = state.index(a.router, d);
          if (state.traffic()[i] > 0 && hops[i] == kNoRouter) {
            const auto c = t.candidates(a.router, d);
            hops[i] = c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
          }
        }
        const StepResult r = step(state, t, hops);
        snap.steps.push_back(r.record);
        traj.steps.push_back(r.record);
        const auto fresh = state.recompute_window_sums();
        for (std::size_t q = 0; q < t.router_count(); ++q) {
          long sum = 0;
          for (std::size_t d = 0; d < D; ++d) {
            const std::size_t i = q * D + d;
            if (fresh[i] != state.window_sums()[i]) worst_window = std::max(worst_window, 1.0);
            sum += fresh[i];
          }
          worst_window = std::max(worst_window, std::abs(state.windowed_load(static_cast<RouterId>(q)) -
                                                         static_cast<double>(sum) / sched.window_waves()));
        }
      }
      if (state.in_flight() != 0 || state.injected() - in0 != state.delivered() - out0) ++conservation_failures;
      rewards.push_back(world_reward(t, snap));
      for (int d = 0; d < static_cast<int>(D); ++d) {
        const double closed = wlr(t, snap, d);
        const double clamped = effect_set_wlu(t, traj, sched, EffectSetSpec{d, wave, false});
        worst_wlr = std::max(worst_wlr, std::abs(closed - clamped) / std::max(1.0, std::abs(closed)));
      }
      ++snapshots;
    }
    const double g = world_utility(t, traj);
    const double sum = std::accumulate(rewards.begin(), rewards.end(), 0.0);
    worst_g = std::max(worst_g, std::abs(g - sum) / std::max(1.0, std::abs(g)));
  }
  v.require(snapshots == 100, "snapshot count");
  v.require(conservation_failures == 0, fmt::format("{} waves lost packets", conservation_failures));
  v.require(worst_window <= kWindowTol, fmt::format("window identity off by {:.2e}", worst_window));
  v.require(worst_g <= kUtilityTol, fmt::format("G vs summed wave rewards off by {:.2e}", worst_g));
  v.require(worst_wlr <= kUtilityTol, fmt::format("closed-form WLR vs clamp off by {:.2e}", worst_wlr));
  v.note(fmt::format("{} wave snapshots; worst window {:.1e}, G {:.1e}, WLR {:.1e}", snapshots, worst_window, worst_g,
                     worst_wlr));
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "threshold worked example", 1, worked_example},
      {2, "threshold simulator within bounds", 30, threshold_oracle},
      {3, "Braess equilibria by best response", 1, braess_equilibria},
      {4, "shared-link greedy vs alternates", 1, shared_link},
      {5, "hex ISPA steady states", 10, hex_ispa},
      {6, "Braess flags", 300, braess_flags},
      {7, "steering endpoints", 300, steering_endpoints},
      {8, "factoredness suite", 10, factoredness_suite},
      {9, "model identities", 10, model_identities},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = fmt::format("exception: {}", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) v.require(false, fmt::format("took {:.1f} s, budget {} s", secs, c.budget_s));
    failed += !v.pass;
    fmt::print("[{}] {}. {} ({:.2f} s): {}\n", v.pass ? "PASS" : "FAIL", c.id, c.title, secs, v.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
