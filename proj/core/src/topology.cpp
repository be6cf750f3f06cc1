#include "coinroute/topology.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace coinroute {

// ---------------------------------------------------------------------------
// Topology

std::optional<RouterId> Topology::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<RouterId>(i);
  }
  return std::nullopt;
}

RouterId Topology::id(std::string_view name) const {
  if (auto r = find(name)) return *r;
  throw TopologyError(fmt::format("unknown router '{}'", name));
}

bool Topology::has_link(RouterId from, RouterId to) const {
  auto s = successors(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<RouterId, RouterId>> Topology::links() const {
  std::vector<std::pair<RouterId, RouterId>> out;
  for (std::size_t r = 0; r < succ_.size(); ++r) {
    for (RouterId to : succ_[r]) out.emplace_back(static_cast<RouterId>(r), to);
  }
  return out;
}

bool Topology::reaches(RouterId from, RouterId to) const {
  return reach_.at(static_cast<std::size_t>(from)).at(static_cast<std::size_t>(to)) != 0;
}

std::span<const RouterId> Topology::candidates(RouterId router, int dest_index) const {
  return cand_.at(static_cast<std::size_t>(router)).at(static_cast<std::size_t>(dest_index));
}

std::vector<AgentKey> Topology::decision_points() const {
  std::vector<AgentKey> out;
  for (const auto& a : agents_) {
    if (candidates(a.router, destination_index(a.destination)).size() > 1) out.push_back(a);
  }
  return out;
}

Topology Topology::with_demand_packets(std::span<const int> packets) const {
  if (packets.size() != demands_.size()) {
    throw TopologyError(fmt::format("expected {} demand counts, got {}", demands_.size(),
                                    packets.size()));
  }
  Topology out = *this;
  for (std::size_t i = 0; i < packets.size(); ++i) {
    if (packets[i] < 1) throw TopologyError("packets per wave must be >= 1");
    out.demands_[i].packets = packets[i];
  }
  return out;
}

Topology Topology::with_scaled_costs(double c) const {
  Topology out = *this;
  for (auto& cost : out.costs_) cost = scaled(cost, c);
  return out;
}

bool operator==(const Topology& lhs, const Topology& rhs) {
  return lhs.names_ == rhs.names_ && lhs.costs_ == rhs.costs_ && lhs.succ_ == rhs.succ_ &&
         lhs.demands_ == rhs.demands_;
}

void Topology::finalize() {
  const std::size_t n = names_.size();
  for (auto& s : succ_) std::sort(s.begin(), s.end());

  reach_.assign(n, std::vector<char>(n, 0));
  for (std::size_t src = 0; src < n; ++src) {
    std::vector<RouterId> stack{static_cast<RouterId>(src)};
    reach_[src][src] = 1;
    while (!stack.empty()) {
      RouterId v = stack.back();
      stack.pop_back();
      for (RouterId w : succ_[static_cast<std::size_t>(v)]) {
        if (!reach_[src][static_cast<std::size_t>(w)]) {
          reach_[src][static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }

  destinations_.clear();
  dest_index_.assign(n, -1);
  for (const auto& d : demands_) {
    if (dest_index_[static_cast<std::size_t>(d.destination)] < 0) {
      dest_index_[static_cast<std::size_t>(d.destination)] = static_cast<int>(destinations_.size());
      destinations_.push_back(d.destination);
    }
  }

  cand_.assign(n, std::vector<std::vector<RouterId>>(destinations_.size()));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t di = 0; di < destinations_.size(); ++di) {
      RouterId d = destinations_[di];
      if (static_cast<RouterId>(r) == d) continue;
      for (RouterId w : succ_[r]) {
        if (reaches(w, d)) cand_[r][di].push_back(w);
      }
    }
  }

  std::set<AgentKey> agents;
  for (const auto& dem : demands_) {
    int di = dest_index_[static_cast<std::size_t>(dem.destination)];
    for (std::size_t r = 0; r < n; ++r) {
      RouterId rr = static_cast<RouterId>(r);
      if (rr == dem.destination) continue;
      if (reaches(dem.source, rr) && reaches(rr, dem.destination) && !cand_[r][static_cast<std::size_t>(di)].empty()) {
        agents.insert(AgentKey{rr, dem.destination});
      }
    }
  }
  agents_.assign(agents.begin(), agents.end());
}

// ---------------------------------------------------------------------------
// Builder

RouterId TopologyBuilder::add_router(std::string name, LoadToCost cost) {
  if (name.empty()) throw TopologyError("router name must be non-empty");
  if (topo_.find(name)) throw TopologyError(fmt::format("duplicate router '{}'", name));
  topo_.names_.push_back(std::move(name));
  topo_.costs_.push_back(cost);
  topo_.succ_.emplace_back();
  return static_cast<RouterId>(topo_.names_.size() - 1);
}

void TopologyBuilder::add_link(std::string_view from, std::string_view to) {
  RouterId a = topo_.id(from);
  RouterId b = topo_.id(to);
  if (a == b) throw TopologyError(fmt::format("self-loop at '{}'", from));
  auto& s = topo_.succ_[static_cast<std::size_t>(a)];
  if (std::find(s.begin(), s.end(), b) != s.end()) {
    throw TopologyError(fmt::format("duplicate link {} -> {}", from, to));
  }
  s.push_back(b);
}

void TopologyBuilder::add_demand(std::string_view source, std::string_view destination,
                                 int packets) {
  if (packets < 1) {
    throw TopologyError(fmt::format("demand {} -> {}: packets per wave must be >= 1", source,
                                    destination));
  }
  RouterId s = topo_.id(source);
  RouterId d = topo_.id(destination);
  if (s == d) throw TopologyError("demand source equals destination");
  topo_.demands_.push_back(Demand{s, d, packets});
}

Topology TopologyBuilder::build() const {
  Topology t = topo_;
  t.finalize();
  for (const auto& dem : t.demands_) {
    if (!t.reaches(dem.source, dem.destination)) {
      throw TopologyError(fmt::format("destination '{}' unreachable from '{}'",
                                      t.name(dem.destination), t.name(dem.source)));
    }
    // A cycle among routers lying on source->destination paths: an edge u->v
    // inside that set with v reaching back to u.
    for (std::size_t u = 0; u < t.router_count(); ++u) {
      RouterId uu = static_cast<RouterId>(u);
      if (!t.reaches(dem.source, uu) || !t.reaches(uu, dem.destination)) continue;
      for (RouterId v : t.successors(uu)) {
        if (t.reaches(v, dem.destination) && t.reaches(v, uu)) {
          throw TopologyError(fmt::format("cycle through {} -> {} on a path from '{}' to '{}'",
                                          t.name(uu), t.name(v), t.name(dem.source),
                                          t.name(dem.destination)));
        }
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Text format

std::string_view to_string(Variant v) { return v == Variant::kA ? "A" : "B"; }

Variant parse_variant(std::string_view text) {
  if (text == "A" || text == "a") return Variant::kA;
  if (text == "B" || text == "b") return Variant::kB;
  throw ParseError(fmt::format("unknown network variant '{}'", text));
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, std::size_t line_no) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(fmt::format("line {}: expected integer, got '{}'", line_no, tok));
  }
  return v;
}

double parse_double(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(fmt::format("line {}: expected number, got '{}'", line_no, tok));
}

}  // namespace

ScenarioText parse_scenario_text(std::string_view text) {
  ScenarioText out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tok = tokenize(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    auto expect = [&](std::size_t n) {
      if (tok.size() != n) {
        throw ParseError(fmt::format("line {}: '{}' expects {} field(s), got {}", line_no, kw,
                                     n - 1, tok.size() - 1));
      }
    };
    if (kw == "name") {
      if (tok.size() < 2) throw ParseError(fmt::format("line {}: empty name", line_no));
      out.name = tok[1];
      for (std::size_t i = 2; i < tok.size(); ++i) out.name += " " + tok[i];
    } else if (kw == "node") {
      if (tok.size() < 3) throw ParseError(fmt::format("line {}: node needs id and form", line_no));
      std::string spec = tok[2];
      for (std::size_t i = 3; i < tok.size(); ++i) spec += " " + tok[i];
      try {
        out.nodes.emplace_back(tok[1], parse_cost(spec));
      } catch (const std::invalid_argument& e) {
        throw ParseError(fmt::format("line {}: {}", line_no, e.what()));
      }
    } else if (kw == "edge") {
      expect(3);
      out.edges.emplace_back(tok[1], tok[2]);
    } else if (kw == "added") {
      expect(3);
      out.added_edges.emplace_back(tok[1], tok[2]);
    } else if (kw == "demand") {
      expect(4);
      out.demands.push_back({tok[1], tok[2], parse_int(tok[3], line_no)});
    } else if (kw == "loads") {
      std::vector<int> row;
      for (std::size_t i = 1; i < tok.size(); ++i) row.push_back(parse_int(tok[i], line_no));
      if (row.empty()) throw ParseError(fmt::format("line {}: empty loads row", line_no));
      out.load_rows.push_back(std::move(row));
    } else if (kw == "steering") {
      for (std::size_t i = 1; i < tok.size(); ++i) out.steering.push_back(parse_double(tok[i], line_no));
    } else if (kw == "schedule") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos || eq == 0) {
          throw ParseError(fmt::format("line {}: schedule entries are key=value", line_no));
        }
        out.schedule[tok[i].substr(0, eq)] = tok[i].substr(eq + 1);
      }
    } else {
      throw ParseError(fmt::format("line {}: unknown keyword '{}'", line_no, kw));
    }
  }
  return out;
}

Topology build_topology(const ScenarioText& parsed, Variant variant) {
  TopologyBuilder b;
  for (const auto& [name, cost] : parsed.nodes) b.add_router(name, cost);
  for (const auto& [from, to] : parsed.edges) b.add_link(from, to);
  if (variant == Variant::kB) {
    for (const auto& [from, to] : parsed.added_edges) b.add_link(from, to);
  }
  for (const auto& d : parsed.demands) b.add_demand(d.source, d.destination, d.packets);
  return b.build();
}

Topology build_topology(std::string_view text, Variant variant) {
  return build_topology(parse_scenario_text(text), variant);
}

std::string serialize(const Topology& topology) {
  std::string out;
  for (std::size_t r = 0; r < topology.router_count(); ++r) {
    out += fmt::format("node {} {}\n", topology.name(static_cast<RouterId>(r)),
                       to_string(topology.cost(static_cast<RouterId>(r))));
  }
  for (const auto& [from, to] : topology.links()) {
    out += fmt::format("edge {} {}\n", topology.name(from), topology.name(to));
  }
  for (const auto& d : topology.demands()) {
    out += fmt::format("demand {} {} {}\n", topology.name(d.source), topology.name(d.destination),
                       d.packets);
  }
  return out;
}

int longest_path_length(const Topology& topology) {
  int best = 0;
  for (const auto& dem : topology.demands()) {
    // Longest hop count to the destination over routers on demand paths;
    // acyclicity on that set is a Topology invariant.
    std::vector<int> memo(topology.router_count(), -1);
    std::function<int(RouterId)> longest = [&](RouterId v) -> int {
      if (v == dem.destination) return 0;
      int& m = memo[static_cast<std::size_t>(v)];
      if (m >= 0) return m;
      int out = 0;
      for (RouterId w : topology.successors(v)) {
        if (topology.reaches(w, dem.destination)) out = std::max(out, 1 + longest(w));
      }
      m = out;
      return out;
    };
    best = std::max(best, longest(dem.source));
  }
  if (best < 1) throw TopologyError("topology has no demand paths");
  return best;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace coinroute
