#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coinroute/agents.hpp"
#include "coinroute/schedule.hpp"
#include "coinroute/topology.hpp"

namespace coinroute {

/// A bundled experiment: both network variants, the demand rows of its
/// table, the schedule and the algorithms to compare.
struct Scenario {
  std::string name;
  ScenarioText text;
  Topology net_a;
  std::optional<Topology> net_b;  // present when the file has `added` links
  std::vector<std::vector<int>> loads;  // one packet count per demand per row
  RunPlan plan;
  int seeds = 20;
  std::vector<double> steering;  // from the file; default {0.5}
  std::vector<AgentPolicy> roster;

  const Topology& net(Variant v) const;
  /// Variant `v` with the demands of `row`.
  Topology network(Variant v, const std::vector<int>& row) const;
  WaveSchedule schedule(const Topology& network) const;
};

/// Builds a scenario from file text. The schedule line accepts
/// L=<int|auto> W=<int> warmup= measure= bootstrap= seeds=; with L=auto the
/// wave length is the longest demand path over both variants. The default
/// roster is ISPA plus MB at each steering value.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

struct ResultRow {
  std::vector<int> load;
  Variant variant = Variant::kA;
  std::string algorithm;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation over seeds
  int seeds = 0;
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  /// Row for (load, variant, algorithm), or nullptr.
  const ResultRow* find(const std::vector<int>& load, Variant variant,
                        std::string_view algorithm) const;
  /// Sorts rows by load, variant, then algorithm.
  void sort();
};

struct HarnessOptions {
  int threads = 0;  // 0: hardware concurrency
  std::uint64_t first_seed = 1;
  std::optional<int> seeds;  // overrides the scenario
};

/// Per-packet cost of `policy` for each seed.
std::vector<double> run_seeds(const Topology& network, const WaveSchedule& schedule,
                              const AgentPolicy& policy, const std::vector<std::uint64_t>& seeds,
                              int threads = 0);

/// Every (load row, variant, roster entry) averaged over the seeds. Throws
/// std::invalid_argument for an empty roster.
ResultTable run_scenario(const Scenario& scenario, const HarnessOptions& options = {});

enum class BraessClass { kParadox, kBenefit, kNeutral };
std::string_view to_string(BraessClass c);

struct BraessFlag {
  std::vector<int> load;
  std::string algorithm;
  double cost_a = 0.0;
  double cost_b = 0.0;
  BraessClass verdict = BraessClass::kNeutral;
};

/// PARADOX when cost_B > cost_A + tolerance, BENEFIT when cost_B <
/// cost_A - tolerance, NEUTRAL otherwise. Throws std::invalid_argument when
/// a (load, algorithm) lacks one of the variants.
std::vector<BraessFlag> braess_report(const ResultTable& table, double tolerance = 0.5);

struct SweepPoint {
  double steering = 0.0;
  ResultTable table;
  double mean_cost = 0.0;  // average of the table's means
};

/// MB at each steering value on every load row and variant. Throws
/// std::invalid_argument for steering outside [0, 1].
std::vector<SweepPoint> steering_sweep(const Scenario& scenario, const std::vector<double>& steering,
                                       const HarnessOptions& options = {});

enum class TableFormat { kCsv, kMarkdown };

/// Columns load, variant, algorithm, mean, std, seeds; numbers with six decimals.
std::string to_csv(const ResultTable& table);
/// Rows are loads, columns are variant × algorithm, cells "mean ± std".
std::string to_markdown(const ResultTable& table);
/// Inverse of to_csv. Throws ParseError on malformed input.
ResultTable parse_csv(std::string_view text);
/// Writes the table to `path`; throws std::runtime_error if it cannot.
void emit(const ResultTable& table, TableFormat format, const std::string& path);

/// One line per seed: seed, per_packet_cost, total_cost, packets_injected,
/// packets_delivered, waves_measured.
std::string run_results_csv(const std::vector<std::uint64_t>& seeds,
                            const std::vector<RunResult>& results);

}  // namespace coinroute
