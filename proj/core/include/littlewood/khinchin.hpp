#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "littlewood/exponents.hpp"
#include "littlewood/forms.hpp"

namespace littlewood {

/// Finite scalar sequence (a_n), n = 1..N, N >= 1, entries finite.
class CoefficientVector {
 public:
  CoefficientVector(Field field, std::vector<Scalar> values);
  static CoefficientVector real(const std::vector<double>& values);

  Field field() const noexcept { return field_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Scalar> values() const noexcept { return values_; }
  const Scalar& operator[](std::size_t n) const { return values_[n]; }
  bool is_zero() const noexcept;

  CoefficientVector scaled(Scalar c) const;

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  Field field_;
  std::vector<Scalar> values_;
};

enum class AverageKind { rademacher, e_m, steinhaus };
enum class AverageMethod { enumeration, quadrature, e_m_limit };

std::string_view to_string(AverageKind kind);
std::string_view to_string(AverageMethod method);

struct AverageResult {
  double value = 0.0;
  AverageKind kind = AverageKind::rademacher;
  int order = 0;  // M for e_m averages and the e_m_limit/quadrature resolution used
  AverageMethod method = AverageMethod::enumeration;
  std::optional<double> error_bound;
};

inline constexpr std::size_t kRademacherCap = 30;
inline constexpr std::size_t kQuadratureCap = 8;
inline constexpr std::uint64_t kAverageBudget = 100'000'000;

/// 2^{-N} sum over eta in {-1, 1}^N of |sum_n eta_n a_n|, exact enumeration
/// (eta_1 = +1 fixed). Throws CapacityError for N > 30.
AverageResult rademacher_average(const CoefficientVector& c);

/// (sum |a_n|^r)^{1/r}, or max |a_n| for r = inf.
double lr_norm(const CoefficientVector& c, const ExtExponent& r);

/// l_r norm over the Rademacher average. Requires r >= 2; throws
/// UndefinedRatioError for the zero vector.
double khinchin_ratio(const CoefficientVector& c, const ExtExponent& r);

/// E_M = M^{-N} sum over beta in Omega_M^N of |sum_n a_n e^{i beta_n}|, with the
/// last angle fixed to 0. M = 2 is the Rademacher enumeration itself.
/// Throws CapacityError when M^{N-1} exceeds `budget`.
AverageResult e_m_average(const CoefficientVector& c, int order,
                          std::uint64_t budget = kAverageBudget);

/// True iff E_M(a) and E_M(a_n e^{i s_n}) agree to 1e-12 relative. Each shift
/// must lie within 1e-12 of an angle 2 pi j / M, else std::invalid_argument.
bool rotation_invariance_check(const CoefficientVector& c, int order, std::span<const double> shifts);

/// Product trapezoid rule with `nodes` points per angle (even, >= 4).
struct Quadrature {
  int nodes = 256;
};
/// E_M along an increasing schedule of orders (at least two).
struct EmLimit {
  std::vector<int> schedule;
};
using SteinhausMethod = std::variant<Quadrature, EmLimit>;

/// E|sum a_n eps_n| for independent Steinhaus variables eps_n.
/// Quadrature reports |V(Q) - V(Q/2)| as error_bound; e_m_limit reports the
/// gap between its last two orders.
AverageResult steinhaus_expectation(const CoefficientVector& c, const SteinhausMethod& method,
                                    std::uint64_t budget = kAverageBudget);

/// Mean of |R + rho e^{it}| over t in [0, 2 pi) (closed form via the AGM).
double circle_mean_distance(double radius, double rho);

/// Ceiling of the l_r / E_M ratio: 2^{1/r} for M = 2, (4/pi)^{1/r} / R_M otherwise.
double blei_ceiling(int order, const ExtExponent& r);

struct BleiBoundReport {
  int order = 2;
  ExtExponent r = ExtExponent(2.0);
  double ratio = 0.0;
  double ceiling = 0.0;
  CoefficientVector witness;
  bool violated = false;
};

/// Requires M >= 2, r >= 2; throws UndefinedRatioError for the zero vector.
BleiBoundReport blei_bound_check(const CoefficientVector& c, int order, const ExtExponent& r);

/// |E_M - reference| along the given orders; monotone is reported, not required.
struct ConvergenceReport {
  double reference = 0.0;
  std::vector<int> orders;
  std::vector<double> gaps;
  bool monotone = true;
};

ConvergenceReport monitor_e_m_convergence(const CoefficientVector& c, std::span<const int> orders,
                                          double reference);

}  // namespace littlewood
