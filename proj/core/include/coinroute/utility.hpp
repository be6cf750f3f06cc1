#pragma once

#include <compare>
#include <set>

#include "coinroute/simulator.hpp"

namespace coinroute {

enum class Field { kTraffic, kWindowed };  // x_{r,d}(t) or X_{r,d}(t)

/// One component of the trajectory vector. `step` indexes Trajectory::steps.
struct Coordinate {
  Field field = Field::kTraffic;
  std::size_t step = 0;
  RouterId router = 0;
  int destination = 0;
  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

using ClampSet = std::set<Coordinate>;

/// Counterfactual view of a trajectory with the coordinates in σ read as 0.
/// Holds a reference to the base trajectory, which must outlive the view.
class ClampedView {
 public:
  ClampedView(const Trajectory& base, ClampSet sigma);

  const Trajectory& base() const { return *base_; }
  const ClampSet& sigma() const { return sigma_; }

  int x(std::size_t step, RouterId r, int d) const;
  double X(std::size_t step, RouterId r, int d) const;

  /// Copy of the base with clamped coordinates zeroed.
  Trajectory materialize() const;

 private:
  const Trajectory* base_;
  ClampSet sigma_;
};

/// Throws std::out_of_range if a coordinate of σ is outside the trajectory.
ClampedView clamp(const Trajectory& trajectory, ClampSet sigma);

double world_utility(const Topology& topology, const ClampedView& view);

/// G(ζ) - G(CL_σ(ζ)).
double wlu(const Topology& topology, const Trajectory& trajectory, const ClampSet& sigma);

/// Closed-form per-wave reward credited to every agent bound for
/// destination index `d`:
///   Σ_{t∈κ,r} [ Σ_{d'} x_{r,d'} V_r(Σ_{d''} X_{r,d''})
///             - Σ_{d'≠d} x_{r,d'} V_r(Σ_{d''≠d} X_{r,d''}) ]
/// Expressed as cost: lower is better.
double wlr(const Topology& topology, const WaveSnapshot& wave, int d);

struct EffectSetSpec {
  int destination = 0;  // destination index
  long wave = 0;
  /// Also clamp X_{·,d}(t) for the steps after the wave that still hold
  /// the wave's traffic in their window.
  bool include_future_window_terms = false;
};

/// Estimated effect set of any agent bound for `spec.destination` acting in
/// `spec.wave`: every x_{·,d}(t) and X_{·,d}(t) with t in that wave, plus the
/// future windowed terms when requested. Steps are located by their time
/// stamps, so `trajectory` may be a full run or a slice of one.
ClampSet effect_set(const Trajectory& trajectory, const WaveSchedule& schedule,
                    const EffectSetSpec& spec);

/// WLU for the estimated effect set; with include_future_window_terms off
/// this equals wlr() of the wave.
double effect_set_wlu(const Topology& topology, const Trajectory& trajectory,
                      const WaveSchedule& schedule, const EffectSetSpec& spec);

}  // namespace coinroute
