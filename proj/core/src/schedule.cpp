#include "coinroute/schedule.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "coinroute/topology.hpp"

namespace coinroute {

void WaveSchedule::validate() const {
  if (wave_length < 1) throw std::invalid_argument("wave length L must be >= 1");
  if (window < 1 || window % wave_length != 0) {
    throw std::invalid_argument(
        fmt::format("window W={} must be a positive multiple of L={}", window, wave_length));
  }
  if (bootstrap_waves < 0 || measure_start < bootstrap_waves) {
    throw std::invalid_argument("measurement must start after the bootstrap waves");
  }
  if (total_waves <= measure_start) {
    throw std::invalid_argument("schedule measures no waves");
  }
}

WaveSchedule resolve_schedule(const RunPlan& plan, const Topology& topology) {
  WaveSchedule s;
  s.wave_length = plan.wave_length ? *plan.wave_length : longest_path_length(topology);
  s.window = plan.window ? *plan.window : plan.window_waves * s.wave_length;
  if (s.wave_length < 1 || s.window < 1 || s.window % s.wave_length != 0) {
    throw std::invalid_argument(
        fmt::format("window W={} must be a positive multiple of L={}", s.window, s.wave_length));
  }
  s.bootstrap_waves = plan.bootstrap_waves;
  int warmup = plan.warmup_waves ? *plan.warmup_waves : s.window_waves();
  if (warmup < 0) throw std::invalid_argument("warmup must be >= 0");
  s.measure_start = plan.bootstrap_waves + warmup;
  s.total_waves = s.measure_start + plan.measured_waves;
  s.validate();
  return s;
}

}  // namespace coinroute
