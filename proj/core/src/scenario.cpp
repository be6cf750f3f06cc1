#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "coinroute/harness.hpp"

namespace coinroute {
namespace {

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ParseError(fmt::format("schedule {}={} is not an integer", key, value));
  }
  return out;
}

}  // namespace

const Topology& Scenario::net(Variant v) const {
  if (v == Variant::kA) return net_a;
  if (!net_b) throw std::invalid_argument(fmt::format("scenario '{}' has no variant B", name));
  return *net_b;
}

Topology Scenario::network(Variant v, const std::vector<int>& row) const {
  return net(v).with_demand_packets(row);
}

WaveSchedule Scenario::schedule(const Topology& network) const {
  return resolve_schedule(plan, network);
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  s.text = parse_scenario_text(text);
  s.name = s.text.name;
  s.net_a = build_topology(s.text, Variant::kA);
  if (!s.text.added_edges.empty()) s.net_b = build_topology(s.text, Variant::kB);

  for (const auto& [key, value] : s.text.schedule) {
    if (key == "L") {
      if (value != "auto") s.plan.wave_length = parse_int(key, value);
    } else if (key == "W") {
      s.plan.window = parse_int(key, value);
    } else if (key == "warmup") {
      s.plan.warmup_waves = parse_int(key, value);
    } else if (key == "measure") {
      s.plan.measured_waves = parse_int(key, value);
    } else if (key == "bootstrap") {
      s.plan.bootstrap_waves = parse_int(key, value);
    } else if (key == "seeds") {
      s.seeds = parse_int(key, value);
    } else {
      throw ParseError(fmt::format("unknown schedule key '{}'", key));
    }
  }
  if (!s.plan.wave_length) {
    int L = longest_path_length(s.net_a);
    if (s.net_b) L = std::max(L, longest_path_length(*s.net_b));
    s.plan.wave_length = L;
  }
  if (s.seeds < 1) throw ParseError("seeds must be >= 1");

  const std::size_t demands = s.net_a.demands().size();
  if (s.text.load_rows.empty()) {
    std::vector<int> row;
    for (const auto& d : s.net_a.demands()) row.push_back(d.packets);
    s.loads.push_back(std::move(row));
  } else {
    for (const auto& row : s.text.load_rows) {
      if (row.size() != demands) {
        throw ParseError(fmt::format("load row has {} entries for {} demands", row.size(), demands));
      }
      s.loads.push_back(row);
    }
  }

  s.steering = s.text.steering.empty() ? std::vector<double>{0.5} : s.text.steering;
  s.roster.push_back(AgentPolicy{Algorithm::kIspa, 0.0});
  for (double st : s.steering) {
    AgentPolicy mb{Algorithm::kMemoryBased, st};
    mb.validate();
    s.roster.push_back(mb);
  }
  // Surface schedule errors at load time.
  (void)s.schedule(s.net_a);
  return s;
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

}  // namespace coinroute
