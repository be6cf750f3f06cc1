#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "coinroute/agents.hpp"
#include "coinroute/harness.hpp"
#include "coinroute/lb_analysis.hpp"

namespace cr = coinroute;

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << text;
}

std::string render(const cr::ResultTable& table, const std::string& format) {
  return format == "markdown" ? cr::to_markdown(table) : cr::to_csv(table);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coinroute: wave-based routing simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string algo = "ispa";
  double steering = 0.5;
  int seeds = 0;
  int waves = 0;
  int threads = 0;
  std::string out_path;
  std::string format = "csv";

  auto* run_cmd = app.add_subcommand("run", "one algorithm over every load row and variant");
  run_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("--algo", algo, "ispa | fk | mb");
  run_cmd->add_option("--steering", steering, "MB steering in [0, 1]");
  run_cmd->add_option("--seeds", seeds, "seed count (default: scenario)");
  run_cmd->add_option("--waves", waves, "measured waves (default: scenario)");
  run_cmd->add_option("--out", out_path, "output file (default: stdout)");
  run_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "markdown"}));
  run_cmd->add_option("--threads", threads);

  double tolerance = 0.5;
  auto* braess_cmd = app.add_subcommand("braess", "roster on both variants with paradox flags");
  braess_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
  braess_cmd->add_option("--seeds", seeds);
  braess_cmd->add_option("--waves", waves);
  braess_cmd->add_option("--tolerance", tolerance);
  braess_cmd->add_option("--threads", threads);

  std::vector<double> sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "MB cost against steering");
  sweep_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
  sweep_cmd->add_option("--steering", sweep_values, "comma-separated values")->required()->delimiter(',');
  sweep_cmd->add_option("--seeds", seeds);
  sweep_cmd->add_option("--waves", waves);
  sweep_cmd->add_option("--threads", threads);

  std::string ca_text;
  std::string cb_text;
  int window = 0;
  auto* lb_cmd = app.add_subcommand("lb-bounds", "threshold-router bounds for load balancing");
  lb_cmd->add_option("--ca", ca_text, "cost of link A, e.g. \"power 1 2\"")->required();
  lb_cmd->add_option("--cb", cb_text, "cost of link B, e.g. \"affine 0 1\"")->required();
  lb_cmd->add_option("--W", window, "window length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    auto load = [&] {
      cr::Scenario s = cr::load_scenario(scenario_path);
      if (waves > 0) s.plan.measured_waves = waves;
      return s;
    };
    cr::HarnessOptions options;
    options.threads = threads;
    if (seeds > 0) options.seeds = seeds;

    if (*run_cmd) {
      cr::Scenario s = load();
      cr::AgentPolicy policy{cr::parse_algorithm(algo), steering};
      policy.validate();
      s.roster = {policy};
      write_output(render(cr::run_scenario(s, options), format), out_path);
    } else if (*braess_cmd) {
      const cr::Scenario s = load();
      const auto table = cr::run_scenario(s, options);
      std::fputs(cr::to_markdown(table).c_str(), stdout);
      std::puts("");
      for (const auto& f : cr::braess_report(table, tolerance)) {
        fmt::print("{:<10} {:<10} A={:>10.4f} B={:>10.4f} {}\n", fmt::format("{}", fmt::join(f.load, ",")),
                   f.algorithm, f.cost_a, f.cost_b, cr::to_string(f.verdict));
      }
    } else if (*sweep_cmd) {
      const cr::Scenario s = load();
      fmt::print("steering,load,variant,mean,std\n");
      for (const auto& point : cr::steering_sweep(s, sweep_values, options)) {
        for (const auto& row : point.table.rows) {
          fmt::print("{},{},{},{:.6f},{:.6f}\n", point.steering, fmt::join(row.load, " "),
                     cr::to_string(row.variant), row.mean, row.std);
        }
      }
    } else if (*lb_cmd) {
      const auto ca = cr::parse_cost(ca_text);
      const auto cb = cr::parse_cost(cb_text);
      const auto r = cr::verdict(ca, cb, window);
      fmt::print("k_LB       {:>14.6f}   k_LB/W {:.6f}\n", r.k_lb, r.k_lb / window);
      fmt::print("k'         {:>14.6f}   k'/W   {:.6f}\n", r.k_prime, r.k_prime / window);
      fmt::print("LB lower   {:>14.6f}\n", r.lb_lower_bound);
      fmt::print("opt upper  {:>14.6f}\n", r.opt_upper_bound);
      fmt::print("suboptimal {:>14}\n\n", r.suboptimal ? "yes" : "no");
      fmt::print("W,k_lb,k_prime,lb_lower_bound,opt_upper_bound,suboptimal\n");
      fmt::print("{},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", window, r.k_lb, r.k_prime, r.lb_lower_bound,
                 r.opt_upper_bound, r.suboptimal ? "true" : "false");
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
