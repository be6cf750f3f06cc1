#include "coinroute/lb_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include <fmt/format.h>

namespace coinroute {
namespace {

void check_window(int W) {
  if (W <= 4) throw BoundsError(fmt::format("window W = {} leaves no room for 1 < k < W - 1", W));
}

void check_k(int W, double k) {
  check_window(W);
  if (!(k > 1.0 && k < W - 1.0)) {
    throw BoundsError(fmt::format("threshold k = {} outside (1, {})", k, W - 1));
  }
}

}  // namespace

void ThresholdModel::validate() const { check_k(W, k); }

double solve_klb(const LoadToCost& ca, const LoadToCost& cb, int W) {
  check_window(W);
  const double w = W;
  auto f = [&](double k) { return ca(k / w) - cb(1.0 - k / w); };
  double lo = 1.0;
  double hi = w - 1.0;
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw BoundsError("C_A(k/W) - C_B(1 - k/W) has no sign change on (1, W - 1)");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) < 1e-12 || hi - lo < 1e-13 * w) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double upper_bound(const LoadToCost& ca, const LoadToCost& cb, int W, double k) {
  check_k(W, k);
  const double a = (k + 1.0) / W;
  const double b = 1.0 + 2.0 / W - a;
  return a * ca(a) + b * cb(b);
}

double lower_bound(const LoadToCost& ca, const LoadToCost& cb, int W, double k) {
  check_k(W, k);
  const double a = (k - 1.0) / W;
  const double b = 1.0 - 2.0 / W - a;
  return a * ca(a) + b * cb(b);
}

Argmin argmin_upper(const LoadToCost& ca, const LoadToCost& cb, int W) {
  check_window(W);
  const double lo_limit = 1.0;
  const double hi_limit = W - 1.0;
  auto f = [&](double k) { return upper_bound(ca, cb, W, k); };

  // Interior grid; the bracket is the neighbourhood of the best grid point.
  constexpr int kGrid = 512;
  const double step = (hi_limit - lo_limit) / kGrid;
  int best = 1;
  double best_value = f(lo_limit + step);
  for (int i = 2; i < kGrid; ++i) {
    const double v = f(lo_limit + i * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = lo_limit + (best - 1) * step;
  double b = lo_limit + (best + 1) * step;
  // Keep the bracket strictly inside the open interval.
  const double margin = 1e-9 * W;
  a = std::max(a, lo_limit + margin);
  b = std::min(b, hi_limit - margin);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-7 * W) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double k = 0.5 * (a + b);
  return Argmin{k, f(k)};
}

double k_prime_quadratic_linear(int W) {
  check_window(W);
  const double w = W;
  return -1.0 / 3.0 - 1.0 / w + std::sqrt(28.0 + 48.0 / w) / 6.0;
}

BoundsReport verdict(const LoadToCost& ca, const LoadToCost& cb, int W) {
  BoundsReport report;
  report.k_lb = solve_klb(ca, cb, W);
  const Argmin best = argmin_upper(ca, cb, W);
  report.k_prime = best.k;
  report.opt_upper_bound = best.bound;
  report.lb_lower_bound = lower_bound(ca, cb, W, report.k_lb);
  report.suboptimal = report.opt_upper_bound < report.lb_lower_bound;
  return report;
}

ThresholdRun simulate_threshold(const ThresholdModel& model, long steps, long burn_in) {
  model.validate();
  const long W = model.W;
  if (steps < 10 * W) throw BoundsError(fmt::format("need at least {} steps, got {}", 10 * W, steps));
  if (burn_in < 0) burn_in = 2 * W;
  if (burn_in >= steps) throw BoundsError("burn-in leaves no measured steps");

  std::vector<char> window(static_cast<std::size_t>(W), 0);  // 1 = link A
  int S = 0;
  double total = 0.0;
  ThresholdRun run;
  run.min_count = model.W;
  run.max_count = 0;
  for (long t = 0; t < steps; ++t) {
    const bool use_a = S <= model.k;
    const double share = static_cast<double>(S) / model.W;
    const double cost = use_a ? model.ca(share) : model.cb(1.0 - share);
    if (t >= burn_in) {
      total += cost;
      run.min_count = std::min(run.min_count, S);
      run.max_count = std::max(run.max_count, S);
    }
    auto& slot = window[static_cast<std::size_t>(t % W)];
    const int next = S - slot + (use_a ? 1 : 0);
    run.max_jump = std::max(run.max_jump, std::abs(next - S));
    slot = use_a ? 1 : 0;
    S = next;
  }
  run.average_cost = total / static_cast<double>(steps - burn_in);
  return run;
}

}  // namespace coinroute
