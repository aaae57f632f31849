#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace littlewood {

enum class Field { real, complex };

std::string_view to_string(Field field);
Field parse_field(std::string_view text);

/// An exponent in [1, inf]. Infinity is a flag, never a large finite value,
/// so that 1/inf is exactly 0 and sup-levels are computed as maxima.
class ExtExponent {
 public:
  /// Throws std::invalid_argument for p < 1 or NaN; +inf maps to infinity().
  explicit ExtExponent(double p);

  static ExtExponent infinity() noexcept { return ExtExponent(); }
  /// Inverse of reciprocal(): inv in [0, 1], inv == 0 gives infinity. The
  /// reciprocal is kept as given, since 1/(1/inv) need not equal inv.
  static ExtExponent from_reciprocal(double inv);

  /// num / den with reciprocal den / num, both correctly rounded.
  static ExtExponent from_ratio(double num, double den);
  bool is_infinite() const noexcept { return infinite_; }
  /// The finite value, or +inf as a double.
  double value() const noexcept;
  double reciprocal() const noexcept { return inverse_; }

  /// "inf" or the shortest decimal that round-trips.
  std::string to_string() const;

  friend bool operator==(const ExtExponent&, const ExtExponent&) = default;
  friend std::partial_ordering operator<=>(const ExtExponent& lhs, const ExtExponent& rhs) {
    return lhs.value() <=> rhs.value();
  }

 private:
  ExtExponent() = default;

  double value_ = 1.0;
  double inverse_ = 0.0;
  bool infinite_ = true;
};

/// Conjugate index: 1/p + 1/p* = 1, with 1* = inf and inf* = 1.
ExtExponent conjugate(ExtExponent p);

/// Accepts integers, decimals, fractions "p/q" and "inf".
ExtExponent parse_exponent(std::string_view text);

/// (a, b): a is the inner exponent (over columns), b the outer one (over rows).
struct ExponentPair {
  ExtExponent a;
  ExtExponent b;

  /// 1/a + 1/b - 1, in [-1, 1].
  double deficiency() const noexcept { return a.reciprocal() + b.reciprocal() - 1.0; }

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

enum class Region { R0, RI, RII, RIII, RIV };

std::string_view to_string(Region region);
Region parse_region(std::string_view text);

/// 1/a + 1/b <= 3/2, compared exactly on the reciprocals.
bool admissible(const ExponentPair& pair) noexcept;

/// R0 for inadmissible pairs. On shared boundaries the label is chosen with
/// priority RII > RIII > RIV > RI; the constant formula is continuous there.
Region classify_region(const ExponentPair& pair) noexcept;

struct ConstantReport {
  Field field = Field::real;
  std::optional<double> exact;
  double lower = 1.0;
  double upper = 1.0;
  std::string provenance;
};

/// Sharp real constant 2^{max(0, 1/a + 1/b - 1)}. Throws AdmissibilityError.
ConstantReport real_constant(const ExponentPair& pair);

/// Complex constant: exact where known, otherwise [1, (4/pi)^{max(0, d)}].
/// Throws AdmissibilityError.
ConstantReport complex_constant_bounds(const ExponentPair& pair);

ConstantReport constant_report(Field field, const ExponentPair& pair);

inline constexpr double kPi = 3.141592653589793238462643383279502884;
/// 4/pi, the base of the complex ceilings.
inline constexpr double kFourOverPi = 4.0 / kPi;
/// 2/sqrt(pi) = (4/pi)^{1/2}, the complex constant at (1, 2) and (2, 1).
inline constexpr double kTwoOverSqrtPi = 1.128379167095512573896158903121545172;

}  // namespace littlewood
