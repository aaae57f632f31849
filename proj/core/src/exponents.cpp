#include "littlewood/exponents.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "littlewood/errors.hpp"

namespace littlewood {

std::string_view to_string(Field field) {
  return field == Field::real ? "real" : "complex";
}

Field parse_field(std::string_view text) {
  if (text == "real") return Field::real;
  if (text == "complex") return Field::complex;
  throw ParseError("field", fmt::format("expected \"real\" or \"complex\", got \"{}\"", text));
}

ExtExponent::ExtExponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument(fmt::format("exponent must lie in [1, inf], got {}", p));
  }
  if (std::isinf(p)) return;
  value_ = p;
  inverse_ = 1.0 / p;
  infinite_ = false;
}

ExtExponent ExtExponent::from_reciprocal(double inv) {
  if (std::isnan(inv) || inv < 0.0 || inv > 1.0) {
    throw std::invalid_argument(fmt::format("reciprocal exponent must lie in [0, 1], got {}", inv));
  }
  if (inv == 0.0) return infinity();
  ExtExponent out(1.0 / inv);
  out.inverse_ = inv;
  return out;
}

ExtExponent ExtExponent::from_ratio(double num, double den) {
  ExtExponent out(num / den);
  if (!out.is_infinite()) out.inverse_ = den / num;
  return out;
}

double ExtExponent::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string ExtExponent::to_string() const {
  if (infinite_) return "inf";
  return fmt::format("{}", value_);
}

ExtExponent conjugate(ExtExponent p) {
  if (p.is_infinite()) return ExtExponent(1.0);
  return ExtExponent::from_reciprocal(1.0 - p.reciprocal());
}

namespace {

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("exponent", fmt::format("cannot parse \"{}\" as a number", text));
  }
  return value;
}

}  // namespace

ExtExponent parse_exponent(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") {
    return ExtExponent::infinity();
  }
  double value = 0.0;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_number(text.substr(0, slash));
    const double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw ParseError("exponent", fmt::format("zero denominator in \"{}\"", text));
    value = num / den;
    if (!std::isnan(value) && value >= 1.0 && !std::isinf(value)) {
      return ExtExponent::from_ratio(num, den);
    }
  } else {
    value = parse_number(text);
  }
  if (std::isnan(value) || value < 1.0) {
    throw ParseError("exponent", fmt::format("\"{}\" is not in [1, inf]", text));
  }
  return ExtExponent(value);
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::R0: return "R0";
    case Region::RI: return "RI";
    case Region::RII: return "RII";
    case Region::RIII: return "RIII";
    case Region::RIV: return "RIV";
  }
  return "R0";
}

Region parse_region(std::string_view text) {
  for (Region r : {Region::R0, Region::RI, Region::RII, Region::RIII, Region::RIV}) {
    if (to_string(r) == text) return r;
  }
  throw ParseError("region", fmt::format("unknown region label \"{}\"", text));
}

bool admissible(const ExponentPair& pair) noexcept {
  return pair.a.reciprocal() + pair.b.reciprocal() <= 1.5;
}

Region classify_region(const ExponentPair& pair) noexcept {
  if (!admissible(pair)) return Region::R0;
  const double inv_a = pair.a.reciprocal();
  const double inv_b = pair.b.reciprocal();
  const double sum = inv_a + inv_b;
  // b >= a*  <=>  1/a + 1/b <= 1
  if (sum <= 1.0) return Region::RII;
  if (inv_a <= 0.5) return Region::RIII;  // a >= 2, b <= a*
  if (inv_b <= 0.5) return Region::RIV;   // a <= 2, 2 <= b <= a*
  return Region::RI;
}

namespace {

void require_admissible(const ExponentPair& pair) {
  if (!admissible(pair)) {
    throw AdmissibilityError(fmt::format(
        "pair (a, b) = ({}, {}) is not admissible: requires 1/a + 1/b <= 3/2, got {}",
        pair.a.to_string(), pair.b.to_string(), pair.a.reciprocal() + pair.b.reciprocal()));
  }
}

bool same_exponent(const ExtExponent& p, double q) {
  return !p.is_infinite() && p.value() == q;
}

}  // namespace

ConstantReport real_constant(const ExponentPair& pair) {
  require_admissible(pair);
  const double d = std::max(0.0, pair.deficiency());
  ConstantReport report;
  report.field = Field::real;
  const double value = d == 0.0 ? 1.0 : std::exp2(d);
  report.exact = value;
  report.lower = value;
  report.upper = value;
  switch (classify_region(pair)) {
    case Region::RII:
      report.provenance = "sharp real constant 2^max(0,1/a+1/b-1); region RII, constant is 1";
      break;
    default:
      report.provenance = fmt::format(
          "sharp real constant 2^max(0,1/a+1/b-1); region {}, attained by [[1,1],[1,-1]]",
          to_string(classify_region(pair)));
      break;
  }
  return report;
}

ConstantReport complex_constant_bounds(const ExponentPair& pair) {
  require_admissible(pair);
  ConstantReport report;
  report.field = Field::complex;
  const double d = pair.deficiency();
  if (d <= 0.0) {
    report.exact = 1.0;
    report.lower = report.upper = 1.0;
    report.provenance = "complex constant is 1 when 1/a + 1/b <= 1";
    return report;
  }
  if ((same_exponent(pair.a, 1.0) && same_exponent(pair.b, 2.0)) ||
      (same_exponent(pair.a, 2.0) && same_exponent(pair.b, 1.0))) {
    report.exact = kTwoOverSqrtPi;
    report.lower = report.upper = kTwoOverSqrtPi;
    report.provenance = "complex constant at (1,2) and (2,1) is 2/sqrt(pi)";
    return report;
  }
  report.lower = 1.0;
  report.upper = std::pow(kFourOverPi, d);
  report.provenance = "complex constant unknown here; bracket [1, (4/pi)^(1/a+1/b-1)]";
  return report;
}

ConstantReport constant_report(Field field, const ExponentPair& pair) {
  return field == Field::real ? real_constant(pair) : complex_constant_bounds(pair);
}

}  // namespace littlewood
