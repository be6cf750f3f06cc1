#include "coinroute/utility.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace coinroute {

ClampedView::ClampedView(const Trajectory& base, ClampSet sigma)
    : base_(&base), sigma_(std::move(sigma)) {
  for (const auto& c : sigma_) {
    if (c.step >= base.steps.size() || c.router < 0 ||
        static_cast<std::size_t>(c.router) >= base.routers || c.destination < 0 ||
        static_cast<std::size_t>(c.destination) >= base.destinations) {
      throw std::out_of_range(fmt::format("clamp coordinate (step {}, router {}, dest {}) out of range",
                                          c.step, c.router, c.destination));
    }
  }
}

int ClampedView::x(std::size_t step, RouterId r, int d) const {
  if (sigma_.contains(Coordinate{Field::kTraffic, step, r, d})) return 0;
  return base_->steps[step].x[base_->index(r, d)];
}

double ClampedView::X(std::size_t step, RouterId r, int d) const {
  if (sigma_.contains(Coordinate{Field::kWindowed, step, r, d})) return 0.0;
  return base_->steps[step].X[base_->index(r, d)];
}

Trajectory ClampedView::materialize() const {
  Trajectory out = *base_;
  for (const auto& c : sigma_) {
    auto& s = out.steps[c.step];
    if (c.field == Field::kTraffic) {
      s.x[out.index(c.router, c.destination)] = 0;
    } else {
      s.X[out.index(c.router, c.destination)] = 0.0;
    }
  }
  return out;
}

ClampedView clamp(const Trajectory& trajectory, ClampSet sigma) {
  return ClampedView(trajectory, std::move(sigma));
}

double world_utility(const Topology& topology, const ClampedView& view) {
  const Trajectory& base = view.base();
  double total = 0.0;
  for (std::size_t s = 0; s < base.steps.size(); ++s) {
    for (std::size_t r = 0; r < base.routers; ++r) {
      const RouterId rr = static_cast<RouterId>(r);
      double windowed = 0.0;
      for (std::size_t d = 0; d < base.destinations; ++d) windowed += view.X(s, rr, static_cast<int>(d));
      const auto& v = topology.cost(rr);
      for (std::size_t d = 0; d < base.destinations; ++d) {
        if (int x = view.x(s, rr, static_cast<int>(d)); x != 0) total += x * v(windowed);
      }
    }
  }
  return total;
}

double wlu(const Topology& topology, const Trajectory& trajectory, const ClampSet& sigma) {
  return world_utility(topology, trajectory) - world_utility(topology, clamp(trajectory, sigma));
}

double wlr(const Topology& topology, const WaveSnapshot& wave, int d) {
  if (d < 0 || static_cast<std::size_t>(d) >= wave.destinations) {
    throw std::out_of_range("destination index out of range");
  }
  const std::size_t D = wave.destinations;
  const std::size_t dd = static_cast<std::size_t>(d);
  double total = 0.0;
  for (const auto& s : wave.steps) {
    for (std::size_t r = 0; r < wave.routers; ++r) {
      long x_all = 0;
      long x_other = 0;
      double X_all = 0.0;
      double X_other = 0.0;
      for (std::size_t k = 0; k < D; ++k) {
        const int x = s.x[r * D + k];
        const double X = s.X[r * D + k];
        x_all += x;
        X_all += X;
        if (k != dd) {
          x_other += x;
          X_other += X;
        }
      }
      if (x_all == 0) continue;
      const auto& v = topology.cost(static_cast<RouterId>(r));
      total += static_cast<double>(x_all) * v(X_all);
      if (x_other != 0) total -= static_cast<double>(x_other) * v(X_other);
    }
  }
  return total;
}

ClampSet effect_set(const Trajectory& trajectory, const WaveSchedule& schedule,
                    const EffectSetSpec& spec) {
  if (spec.destination < 0 || static_cast<std::size_t>(spec.destination) >= trajectory.destinations) {
    throw std::out_of_range("destination index out of range");
  }
  const long wave_end = schedule.wave_start(spec.wave + 1) - 1;
  ClampSet sigma;
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const long t = trajectory.steps[i].t;
    const bool in_wave = schedule.wave_of(t) == spec.wave;
    // X(t) still averages over some step of the wave while t - W + 1 <= wave_end.
    const bool in_future_window =
        spec.include_future_window_terms && t > wave_end && t <= wave_end + schedule.window - 1;
    if (!in_wave && !in_future_window) continue;
    for (std::size_t r = 0; r < trajectory.routers; ++r) {
      const RouterId rr = static_cast<RouterId>(r);
      if (in_wave) sigma.insert(Coordinate{Field::kTraffic, i, rr, spec.destination});
      sigma.insert(Coordinate{Field::kWindowed, i, rr, spec.destination});
    }
  }
  return sigma;
}

double effect_set_wlu(const Topology& topology, const Trajectory& trajectory,
                      const WaveSchedule& schedule, const EffectSetSpec& spec) {
  return wlu(topology, trajectory, effect_set(trajectory, schedule, spec));
}

}  // namespace coinroute
