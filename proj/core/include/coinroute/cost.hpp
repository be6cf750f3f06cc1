#pragma once

#include <string>
#include <string_view>

namespace coinroute {

enum class CostForm { kAffine, kAffineLog, kPower, kZero };

/// Load-to-cost function of a router: the cost each packet pays to cross
/// the router, as a function of the router's windowed load.
///
///   affine      a + b*x
///   affine-log  a + b*ln(1 + x)
///   power       b * x^p
///   zero        0           (dummy source/destination routers)
struct LoadToCost {
  CostForm form = CostForm::kZero;
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;

  static LoadToCost affine(double a, double b);
  static LoadToCost affine_log(double a, double b);
  static LoadToCost power(double b, double p);
  static LoadToCost zero();

  /// Throws std::domain_error for a negative or non-finite load.
  double operator()(double load) const;

  friend bool operator==(const LoadToCost&, const LoadToCost&) = default;
};

double eval_cost(const LoadToCost& spec, double load);

/// Accepts "power 4 2", "power:4,2", "affine-log 50 1", "zero".
LoadToCost parse_cost(std::string_view text);

/// Space-separated form accepted by parse_cost; doubles print round-trip exact.
std::string to_string(const LoadToCost& spec);

/// Same function with every coefficient that scales the output multiplied by c.
LoadToCost scaled(const LoadToCost& spec, double c);

}  // namespace coinroute
