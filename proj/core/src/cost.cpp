#include "coinroute/cost.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace coinroute {
namespace {

void check_coefficients(const LoadToCost& spec) {
  if (!std::isfinite(spec.a) || !std::isfinite(spec.b) || !std::isfinite(spec.p)) {
    throw std::invalid_argument("cost coefficients must be finite");
  }
  if (spec.a < 0.0 || spec.b < 0.0) {
    throw std::invalid_argument("cost coefficients a, b must be >= 0");
  }
  if (spec.form == CostForm::kPower && spec.p < 1.0) {
    throw std::invalid_argument("power exponent p must be >= 1");
  }
}

std::vector<double> split_numbers(std::string_view text) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw std::invalid_argument(fmt::format("bad cost coefficient '{}'", token));
    }
    out.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace

LoadToCost LoadToCost::affine(double a, double b) {
  LoadToCost s{CostForm::kAffine, a, b, 1.0};
  check_coefficients(s);
  return s;
}

LoadToCost LoadToCost::affine_log(double a, double b) {
  LoadToCost s{CostForm::kAffineLog, a, b, 1.0};
  check_coefficients(s);
  return s;
}

LoadToCost LoadToCost::power(double b, double p) {
  LoadToCost s{CostForm::kPower, 0.0, b, p};
  check_coefficients(s);
  return s;
}

LoadToCost LoadToCost::zero() { return LoadToCost{}; }

double LoadToCost::operator()(double load) const {
  if (!(load >= 0.0) || !std::isfinite(load)) {
    throw std::domain_error(fmt::format("load must be finite and >= 0, got {}", load));
  }
  switch (form) {
    case CostForm::kAffine:
      return a + b * load;
    case CostForm::kAffineLog:
      return a + b * std::log1p(load);
    case CostForm::kPower:
      if (p == 1.0) return b * load;
      if (p == 2.0) return b * load * load;
      return b * std::pow(load, p);
    case CostForm::kZero:
      return 0.0;
  }
  return 0.0;
}

double eval_cost(const LoadToCost& spec, double load) { return spec(load); }

LoadToCost parse_cost(std::string_view text) {
  auto sep = text.find_first_of(" \t:");
  std::string_view form = text.substr(0, sep);
  std::vector<double> coeffs =
      sep == std::string_view::npos ? std::vector<double>{} : split_numbers(text.substr(sep + 1));
  auto need = [&](std::size_t n) {
    if (coeffs.size() != n) {
      throw std::invalid_argument(
          fmt::format("cost form '{}' takes {} coefficient(s), got {}", form, n, coeffs.size()));
    }
  };
  if (form == "affine") {
    need(2);
    return LoadToCost::affine(coeffs[0], coeffs[1]);
  }
  if (form == "affine-log") {
    need(2);
    return LoadToCost::affine_log(coeffs[0], coeffs[1]);
  }
  if (form == "power") {
    need(2);
    return LoadToCost::power(coeffs[0], coeffs[1]);
  }
  if (form == "zero") {
    need(0);
    return LoadToCost::zero();
  }
  throw std::invalid_argument(fmt::format("unknown cost form '{}'", form));
}

std::string to_string(const LoadToCost& spec) {
  switch (spec.form) {
    case CostForm::kAffine:
      return fmt::format("affine {} {}", spec.a, spec.b);
    case CostForm::kAffineLog:
      return fmt::format("affine-log {} {}", spec.a, spec.b);
    case CostForm::kPower:
      return fmt::format("power {} {}", spec.b, spec.p);
    case CostForm::kZero:
      return "zero";
  }
  return "zero";
}

LoadToCost scaled(const LoadToCost& spec, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale must be positive");
  LoadToCost out = spec;
  out.a *= c;
  out.b *= c;
  check_coefficients(out);
  return out;
}

}  // namespace coinroute
