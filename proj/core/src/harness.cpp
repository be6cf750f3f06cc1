#include "coinroute/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace coinroute {
namespace {

std::string join_load(const std::vector<int>& load) { return fmt::format("{}", fmt::join(load, " ")); }

// Runs jobs [0, n) on a small pool; rethrows the first failure.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& job) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ResultRow summarize(std::vector<int> load, Variant variant, std::string algorithm,
                    const std::vector<double>& costs) {
  ResultRow row{std::move(load), variant, std::move(algorithm), 0.0, 0.0,
                static_cast<int>(costs.size())};
  for (double c : costs) row.mean += c;
  row.mean /= static_cast<double>(costs.size());
  if (costs.size() > 1) {
    double ss = 0.0;
    for (double c : costs) ss += (c - row.mean) * (c - row.mean);
    row.std = std::sqrt(ss / static_cast<double>(costs.size() - 1));
  }
  return row;
}

std::vector<std::uint64_t> seed_list(const Scenario& scenario, const HarnessOptions& options) {
  const int n = options.seeds ? *options.seeds : scenario.seeds;
  if (n < 1) throw std::invalid_argument("need at least one seed");
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = options.first_seed + i;
  return seeds;
}

ResultTable run_roster(const Scenario& scenario, const std::vector<AgentPolicy>& roster,
                       const HarnessOptions& options) {
  if (roster.empty()) throw std::invalid_argument("algorithm roster is empty");
  const auto seeds = seed_list(scenario, options);
  std::vector<Variant> variants{Variant::kA};
  if (scenario.net_b) variants.push_back(Variant::kB);

  struct Cell {
    const std::vector<int>* load;
    Variant variant;
    const AgentPolicy* policy;
    Topology network;
    WaveSchedule schedule;
  };
  std::vector<Cell> cells;
  for (const auto& load : scenario.loads) {
    for (Variant v : variants) {
      Topology network = scenario.network(v, load);
      const WaveSchedule schedule = scenario.schedule(network);
      for (const auto& policy : roster) cells.push_back(Cell{&load, v, &policy, network, schedule});
    }
  }

  std::vector<std::vector<double>> costs(cells.size(), std::vector<double>(seeds.size()));
  parallel_for(cells.size() * seeds.size(), options.threads, [&](std::size_t job) {
    const Cell& cell = cells[job / seeds.size()];
    AgentRouter router(*cell.policy);
    const RunResult r = run(cell.network, cell.schedule, router, seeds[job % seeds.size()]);
    costs[job / seeds.size()][job % seeds.size()] = r.per_packet_cost;
  });

  ResultTable table;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    table.rows.push_back(summarize(*cells[i].load, cells[i].variant, cells[i].policy->label(), costs[i]));
  }
  table.sort();
  return table;
}

double parse_number(std::string_view field, std::size_t line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(fmt::format("csv line {}: '{}' is not a number", line, field));
  }
  return out;
}

}  // namespace

const ResultRow* ResultTable::find(const std::vector<int>& load, Variant variant,
                                   std::string_view algorithm) const {
  for (const auto& row : rows) {
    if (row.load == load && row.variant == variant && row.algorithm == algorithm) return &row;
  }
  return nullptr;
}

void ResultTable::sort() {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.load, a.variant, a.algorithm) < std::tie(b.load, b.variant, b.algorithm);
  });
}

std::vector<double> run_seeds(const Topology& network, const WaveSchedule& schedule,
                              const AgentPolicy& policy, const std::vector<std::uint64_t>& seeds,
                              int threads) {
  policy.validate();
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  std::vector<double> out(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    AgentRouter router(policy);
    out[i] = run(network, schedule, router, seeds[i]).per_packet_cost;
  });
  return out;
}

ResultTable run_scenario(const Scenario& scenario, const HarnessOptions& options) {
  return run_roster(scenario, scenario.roster, options);
}

std::string_view to_string(BraessClass c) {
  switch (c) {
    case BraessClass::kParadox:
      return "PARADOX";
    case BraessClass::kBenefit:
      return "BENEFIT";
    case BraessClass::kNeutral:
      return "NEUTRAL";
  }
  return "NEUTRAL";
}

std::vector<BraessFlag> braess_report(const ResultTable& table, double tolerance) {
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  std::map<std::pair<std::vector<int>, std::string>, std::pair<const ResultRow*, const ResultRow*>> cells;
  for (const auto& row : table.rows) {
    auto& cell = cells[{row.load, row.algorithm}];
    (row.variant == Variant::kA ? cell.first : cell.second) = &row;
  }
  std::vector<BraessFlag> out;
  for (const auto& [key, cell] : cells) {
    if (!cell.first || !cell.second) {
      throw std::invalid_argument(fmt::format("load '{}' / {} lacks variant {}", join_load(key.first),
                                              key.second, cell.first ? "B" : "A"));
    }
    BraessFlag flag{key.first, key.second, cell.first->mean, cell.second->mean, BraessClass::kNeutral};
    if (flag.cost_b > flag.cost_a + tolerance) {
      flag.verdict = BraessClass::kParadox;
    } else if (flag.cost_b < flag.cost_a - tolerance) {
      flag.verdict = BraessClass::kBenefit;
    }
    out.push_back(std::move(flag));
  }
  return out;
}

std::vector<SweepPoint> steering_sweep(const Scenario& scenario, const std::vector<double>& steering,
                                       const HarnessOptions& options) {
  for (double s : steering) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument(fmt::format("steering {} outside [0, 1]", s));
  }
  std::vector<SweepPoint> out;
  for (double s : steering) {
    SweepPoint point{s, run_roster(scenario, {AgentPolicy{Algorithm::kMemoryBased, s}}, options), 0.0};
    for (const auto& row : point.table.rows) point.mean_cost += row.mean;
    point.mean_cost /= static_cast<double>(point.table.rows.size());
    out.push_back(std::move(point));
  }
  return out;
}

std::string to_csv(const ResultTable& table) {
  std::string out = "load,variant,algorithm,mean,std,seeds\n";
  for (const auto& row : table.rows) {
    out += fmt::format("{},{},{},{:.6f},{:.6f},{}\n", join_load(row.load), to_string(row.variant),
                       row.algorithm, row.mean, row.std, row.seeds);
  }
  return out;
}

std::string to_markdown(const ResultTable& table) {
  std::vector<std::pair<Variant, std::string>> columns;
  std::vector<std::vector<int>> loads;
  for (const auto& row : table.rows) {
    std::pair<Variant, std::string> col{row.variant, row.algorithm};
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    if (std::find(loads.begin(), loads.end(), row.load) == loads.end()) loads.push_back(row.load);
  }
  std::sort(columns.begin(), columns.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });

  std::string out = "| Load |";
  std::string rule = "|---|";
  for (const auto& [variant, algorithm] : columns) {
    out += fmt::format(" Net {} {} |", to_string(variant), algorithm);
    rule += "---|";
  }
  out += "\n" + rule + "\n";
  for (const auto& load : loads) {
    out += fmt::format("| {} |", join_load(load));
    for (const auto& [variant, algorithm] : columns) {
      const ResultRow* row = table.find(load, variant, algorithm);
      out += row ? fmt::format(" {:.2f} ± {:.2f} |", row->mean, row->std) : std::string(" |");
    }
    out += "\n";
  }
  return out;
}

ResultTable parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  ResultTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "load,variant,algorithm,mean,std,seeds") throw ParseError("csv header mismatch");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t comma; (comma = line.find(',', start)) != std::string::npos; start = comma + 1) {
      fields.push_back(line.substr(start, comma - start));
    }
    fields.push_back(line.substr(start));
    if (fields.size() != 6) throw ParseError(fmt::format("csv line {}: expected 6 fields", line_no));

    ResultRow row;
    std::istringstream loads(fields[0]);
    for (std::string tok; loads >> tok;) row.load.push_back(static_cast<int>(parse_number(tok, line_no)));
    row.variant = parse_variant(fields[1]);
    row.algorithm = fields[2];
    row.mean = parse_number(fields[3], line_no);
    row.std = parse_number(fields[4], line_no);
    row.seeds = static_cast<int>(parse_number(fields[5], line_no));
    table.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw ParseError("csv is empty");
  return table;
}

void emit(const ResultTable& table, TableFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << (format == TableFormat::kCsv ? to_csv(table) : to_markdown(table));
  if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path));
}

std::string run_results_csv(const std::vector<std::uint64_t>& seeds,
                            const std::vector<RunResult>& results) {
  if (seeds.size() != results.size()) throw std::invalid_argument("one result per seed expected");
  std::string out = "seed,per_packet_cost,total_cost,packets_injected,packets_delivered,waves_measured\n";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& r = results[i];
    out += fmt::format("{},{:.6f},{:.6f},{},{},{}\n", seeds[i], r.per_packet_cost, r.total_cost,
                       r.packets_injected, r.packets_delivered, r.waves_measured);
  }
  return out;
}

}  // namespace coinroute
