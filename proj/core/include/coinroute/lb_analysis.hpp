#pragma once

#include <stdexcept>

#include "coinroute/cost.hpp"

namespace coinroute {

/// A single router sending one packet per step down link A or B. S(t)
/// counts the A choices among the W preceding steps; A is used iff
/// S(t) <= k. Sending down A costs C_A(S/W), down B costs C_B(1 - S/W).
struct ThresholdModel {
  LoadToCost ca;
  LoadToCost cb;
  int W = 0;
  double k = 0.0;

  /// Throws BoundsError unless W > 4 and 1 < k < W - 1.
  void validate() const;
};

class BoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BoundsReport {
  double k_lb = 0.0;
  double k_prime = 0.0;
  double lb_lower_bound = 0.0;   // lower bound at k_lb
  double opt_upper_bound = 0.0;  // upper bound at k_prime
  bool suboptimal = false;       // opt_upper_bound < lb_lower_bound
};

/// k with C_A(k/W) = C_B(1 - k/W), by bisection on (1, W - 1). Throws
/// BoundsError when W <= 4 or the difference does not change sign.
double solve_klb(const LoadToCost& ca, const LoadToCost& cb, int W);

/// Average-cost upper bound of the threshold rule at k.
double upper_bound(const LoadToCost& ca, const LoadToCost& cb, int W, double k);

/// Average-cost lower bound of the threshold rule at k.
double lower_bound(const LoadToCost& ca, const LoadToCost& cb, int W, double k);

struct Argmin {
  double k = 0.0;
  double bound = 0.0;
};

/// Minimizer of upper_bound over (1, W - 1): coarse grid, then golden
/// section to |Δk| < 1e-6·W.
Argmin argmin_upper(const LoadToCost& ca, const LoadToCost& cb, int W);

/// k'/W for C_A(x) = x², C_B(x) = x, from setting the derivative to zero.
double k_prime_quadratic_linear(int W);

BoundsReport verdict(const LoadToCost& ca, const LoadToCost& cb, int W);

struct ThresholdRun {
  double average_cost = 0.0;
  int min_count = 0;  // min and max of S(t) after the burn-in
  int max_count = 0;
  int max_jump = 0;   // largest |S(t+1) - S(t)| seen
};

/// Runs the window dynamics for `steps` steps from an empty history
/// (S = 0) and averages the per-step cost after the first `burn_in`
/// steps (default 2W). Throws BoundsError when steps < 10·W.
ThresholdRun simulate_threshold(const ThresholdModel& model, long steps, long burn_in = -1);

}  // namespace coinroute
