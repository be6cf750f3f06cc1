#pragma once

#include <optional>

namespace coinroute {

class Topology;

/// Wave timing for one run.
///
/// Traffic is injected at the first step of every wave of `wave_length`
/// steps. Windowed loads average over the last `window` steps, which must
/// be a whole number of waves. Waves [0, bootstrap_waves) are routed by the
/// shortest-path rule regardless of the policy under test; measurement
/// covers waves [measure_start, total_waves).
struct WaveSchedule {
  int wave_length = 1;
  int window = 1;
  int bootstrap_waves = 0;
  int measure_start = 0;
  int total_waves = 1;

  int window_waves() const { return window / wave_length; }
  long wave_of(long t) const { return t / wave_length; }
  long wave_start(long wave) const { return wave * wave_length; }
  int measured_waves() const { return total_waves - measure_start; }

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;
};

/// User-facing knobs; resolved against a topology into a WaveSchedule.
struct RunPlan {
  std::optional<int> wave_length;  // nullopt: longest demand path
  int window_waves = 10;           // W = window_waves * L unless window is set
  std::optional<int> window;       // W in steps; must be a multiple of L
  int bootstrap_waves = 100;
  std::optional<int> warmup_waves;  // default: W / L
  int measured_waves = 200;
};

WaveSchedule resolve_schedule(const RunPlan& plan, const Topology& topology);

}  // namespace coinroute
