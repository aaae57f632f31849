#include "littlewood/tools/closed_form.hpp"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "littlewood/exponents.hpp"

namespace littlewood::tools {

namespace {

bool close(double x, double y, double tolerance) {
  return std::fabs(x - y) <= tolerance * std::max(1.0, std::fabs(y));
}

std::string exponent_text(int p, int q) {
  return q == 1 ? fmt::format("{}", p) : fmt::format("{}/{}", p, q);
}

}  // namespace

std::optional<std::string> closed_form(double value, double tolerance) {
  if (!std::isfinite(value)) return std::nullopt;
  const std::vector<std::pair<double, std::string>> named = {
      {0.0, "0"},
      {1.0, "1"},
      {2.0, "2"},
      {4.0, "4"},
      {kTwoOverSqrtPi, "2/sqrt(pi)"},
      {kFourOverPi, "4/pi"},
      {kPi * std::sqrt(2.0) / 4.0, "pi*sqrt(2)/4"},
      {(1.0 + std::sqrt(2.0)) / 2.0, "(1+sqrt(2))/2"},
      {2.0 * std::sqrt(2.0) / (1.0 + std::sqrt(2.0)), "2*sqrt(2)/(1+sqrt(2))"},
      {std::sqrt(2.0) / 2.0, "sqrt(2)/2"},
  };
  for (const auto& [v, text] : named) {
    if (close(value, v, tolerance)) return text;
  }
  if (value <= 0.0) return std::nullopt;
  // Rational powers p/q of 2 and 4/pi with small q.
  for (int q = 1; q <= 12; ++q) {
    for (const auto& [base, name] : {std::pair{2.0, std::string("2")}, std::pair{kFourOverPi, std::string("(4/pi)")}}) {
      const double p_real = std::log(value) / std::log(base) * q;
      const int p = static_cast<int>(std::lround(p_real));
      if (p == 0 || std::gcd(p, q) != 1) continue;
      if (close(value, std::pow(base, static_cast<double>(p) / q), tolerance)) {
        return fmt::format("{}^({})", name, exponent_text(p, q));
      }
    }
  }
  return std::nullopt;
}

}  // namespace littlewood::tools
