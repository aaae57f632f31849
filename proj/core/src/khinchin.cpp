#include "littlewood/khinchin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "littlewood/errors.hpp"
#include "littlewood/opnorm.hpp"
#include "littlewood/parallel.hpp"

namespace littlewood {

CoefficientVector::CoefficientVector(Field field, std::vector<Scalar> values)
    : field_(field), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("coefficient vector must be non-empty");
  for (const Scalar& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("coefficients must be finite");
    }
    if (field_ == Field::real && z.imag() != 0.0) {
      throw std::invalid_argument("real-tagged coefficient vector has a nonzero imaginary part");
    }
  }
}

CoefficientVector CoefficientVector::real(const std::vector<double>& values) {
  return CoefficientVector(Field::real, std::vector<Scalar>(values.begin(), values.end()));
}

bool CoefficientVector::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const Scalar& z) { return z == Scalar(0.0); });
}

CoefficientVector CoefficientVector::scaled(Scalar c) const {
  const Field field = (field_ == Field::real && c.imag() == 0.0) ? Field::real : Field::complex;
  std::vector<Scalar> out(values_);
  for (Scalar& z : out) z *= c;
  return CoefficientVector(field, std::move(out));
}

std::string_view to_string(AverageKind kind) {
  switch (kind) {
    case AverageKind::rademacher: return "rademacher";
    case AverageKind::e_m: return "e_m";
    case AverageKind::steinhaus: return "steinhaus";
  }
  return "rademacher";
}

std::string_view to_string(AverageMethod method) {
  switch (method) {
    case AverageMethod::enumeration: return "enumeration";
    case AverageMethod::quadrature: return "quadrature";
    case AverageMethod::e_m_limit: return "e_m_limit";
  }
  return "enumeration";
}

namespace {

constexpr std::uint64_t kBlock = 1u << 12;

inline double modulus(const Scalar& z) { return std::sqrt(z.real() * z.real() + z.imag() * z.imag()); }

std::uint64_t saturating_power(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

void require_r(const ExtExponent& r) {
  if (!r.is_infinite() && r.value() < 2.0) {
    throw std::invalid_argument(fmt::format("r must lie in [2, inf], got {}", r.to_string()));
  }
}

// Mean over the M-ary grid of h(sum_{n<free} a_n w^{d_n} + base), with free
// coordinates enumerated in odometer order and the sum recomputed per block.
template <class Reduce>
long double grid_sum(std::span<const Scalar> free, Scalar base, int order, std::uint64_t budget,
                     const char* what, Reduce&& reduce) {
  const std::size_t count = free.size();
  const std::uint64_t total = saturating_power(static_cast<std::uint64_t>(order), count);
  if (total > budget) {
    throw CapacityError(fmt::format("{}: {}^{} evaluations exceed the budget of {}", what, order,
                                    count, budget),
                        total, budget);
  }
  const RootsOfUnityGrid grid(order);
  return parallel_sum(total, kBlock, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::size_t> digit(count, 0);
    std::uint64_t rest = begin;
    for (std::size_t n = 0; n < count; ++n) {
      digit[n] = static_cast<std::size_t>(rest % static_cast<std::uint64_t>(order));
      rest /= static_cast<std::uint64_t>(order);
    }
    Scalar s = base;
    for (std::size_t n = 0; n < count; ++n) s += free[n] * grid[digit[n]];
    long double acc = reduce(s);
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      for (std::size_t n = 0; n < count; ++n) {
        const std::size_t old = digit[n];
        const std::size_t next = old + 1 == static_cast<std::size_t>(order) ? 0 : old + 1;
        digit[n] = next;
        s += free[n] * (grid[next] - grid[old]);
        if (next != 0) break;
      }
      acc += reduce(s);
    }
    return acc;
  });
}

}  // namespace

AverageResult rademacher_average(const CoefficientVector& c) {
  const std::size_t n = c.size();
  if (n > kRademacherCap) {
    throw CapacityError(fmt::format("rademacher_average: N = {} exceeds the cap of {}", n, kRademacherCap),
                        n, kRademacherCap);
  }
  const auto a = c.values();
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  const long double sum = parallel_sum(patterns, kBlock, [&](std::uint64_t begin, std::uint64_t end) {
    // eta_0 = +1; bit (j - 1) of the Gray code set means eta_j = -1.
    std::vector<double> eta(n, 1.0);
    const std::uint64_t gray = begin ^ (begin >> 1);
    Scalar s = a[0];
    for (std::size_t j = 1; j < n; ++j) {
      eta[j] = ((gray >> (j - 1)) & 1u) ? -1.0 : 1.0;
      s += eta[j] * a[j];
    }
    long double acc = modulus(s);
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(i)) + 1;
      s -= 2.0 * eta[j] * a[j];
      eta[j] = -eta[j];
      acc += modulus(s);
    }
    return acc;
  });
  AverageResult result;
  result.value = static_cast<double>(sum / static_cast<long double>(patterns));
  result.kind = AverageKind::rademacher;
  result.order = 2;
  result.method = AverageMethod::enumeration;
  return result;
}

double lr_norm(const CoefficientVector& c, const ExtExponent& r) {
  double peak = 0.0;
  for (const Scalar& z : c.values()) peak = std::max(peak, std::abs(z));
  if (r.is_infinite() || peak == 0.0) return peak;
  long double sum = 0.0L;
  for (const Scalar& z : c.values()) {
    const double m = std::abs(z);
    if (m != 0.0) sum += std::pow(m / peak, r.value());
  }
  return peak * std::pow(static_cast<double>(sum), 1.0 / r.value());
}

double khinchin_ratio(const CoefficientVector& c, const ExtExponent& r) {
  require_r(r);
  if (c.is_zero()) throw UndefinedRatioError("khinchin_ratio: zero coefficient vector");
  return lr_norm(c, r) / rademacher_average(c).value;
}

AverageResult e_m_average(const CoefficientVector& c, int order, std::uint64_t budget) {
  if (order < 2) throw std::invalid_argument(fmt::format("E_M needs M >= 2, got {}", order));
  if (order == 2) {
    AverageResult result = rademacher_average(c);
    result.kind = AverageKind::e_m;
    return result;
  }
  const auto a = c.values();
  const std::size_t n = a.size();
  const long double sum = grid_sum(a.first(n - 1), a[n - 1], order, budget, "e_m_average",
                                   [](const Scalar& s) { return static_cast<long double>(modulus(s)); });
  const std::uint64_t total = saturating_power(static_cast<std::uint64_t>(order), n - 1);
  AverageResult result;
  result.value = static_cast<double>(sum / static_cast<long double>(total));
  result.kind = AverageKind::e_m;
  result.order = order;
  result.method = AverageMethod::enumeration;
  return result;
}

bool rotation_invariance_check(const CoefficientVector& c, int order, std::span<const double> shifts) {
  if (shifts.size() != c.size()) {
    throw std::invalid_argument(fmt::format("expected {} shifts, got {}", c.size(), shifts.size()));
  }
  constexpr double kTwoPi = 6.283185307179586476925286766559005768;
  std::vector<Scalar> rotated(c.values().begin(), c.values().end());
  for (std::size_t n = 0; n < shifts.size(); ++n) {
    const double steps = shifts[n] * order / kTwoPi;
    const double nearest = std::round(steps);
    if (!std::isfinite(steps) || std::fabs(shifts[n] - nearest * kTwoPi / order) > 1e-12) {
      throw std::invalid_argument(
          fmt::format("shift {} is not an angle 2 pi j / {} (within 1e-12)", shifts[n], order));
    }
    rotated[n] *= unit_root(static_cast<std::int64_t>(nearest), order);
  }
  const double lhs = e_m_average(c, order).value;
  const double rhs = e_m_average(CoefficientVector(Field::complex, std::move(rotated)), order).value;
  return std::fabs(lhs - rhs) <= 1e-12 * std::max(std::fabs(lhs), std::fabs(rhs));
}

double circle_mean_distance(double radius, double rho) {
  radius = std::fabs(radius);
  rho = std::fabs(rho);
  // Equals the perimeter over 2 pi of the ellipse with semi-axes R + rho, |R - rho|.
  const double major = radius + rho;
  const double minor = std::fabs(radius - rho);
  if (major == 0.0) return 0.0;
  if (minor == 0.0) return 2.0 * major / kPi;
  if (radius == 0.0 || rho == 0.0) return major;
  long double a = major;
  long double b = minor;
  long double correction = 0.5L * (a * a - b * b);
  long double weight = 1.0L;
  for (int it = 0; it < 64; ++it) {
    const long double half_gap = 0.5L * (a - b);
    correction += weight * half_gap * half_gap;
    weight *= 2.0L;
    const long double next_a = 0.5L * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
    if (half_gap <= 1e-19L * a) break;
  }
  const long double numerator = static_cast<long double>(major) * major - correction;
  return static_cast<double>(numerator / (0.5L * (a + b)));
}

namespace {

// Trapezoid rule over the remaining angles, the largest coefficient's angle
// integrated in closed form and the second largest fixed at 0.
double steinhaus_trapezoid(const std::vector<double>& moduli, int nodes, std::uint64_t budget) {
  const double exact_rho = moduli[0];
  const double fixed = moduli[1];
  std::vector<Scalar> free(moduli.begin() + 2, moduli.end());
  const long double sum =
      grid_sum(free, fixed, nodes, budget, "steinhaus_expectation", [&](const Scalar& s) {
        return static_cast<long double>(circle_mean_distance(modulus(s), exact_rho));
      });
  const std::uint64_t total = saturating_power(static_cast<std::uint64_t>(nodes), free.size());
  return static_cast<double>(sum / static_cast<long double>(total));
}

}  // namespace

AverageResult steinhaus_expectation(const CoefficientVector& c, const SteinhausMethod& method,
                                    std::uint64_t budget) {
  AverageResult result;
  result.kind = AverageKind::steinhaus;
  if (const auto* quad = std::get_if<Quadrature>(&method)) {
    if (quad->nodes < 4 || quad->nodes % 2 != 0) {
      throw std::invalid_argument(fmt::format("quadrature needs an even node count >= 4, got {}", quad->nodes));
    }
    if (c.size() > kQuadratureCap) {
      throw CapacityError(fmt::format("steinhaus quadrature: N = {} exceeds the cap of {}", c.size(),
                                      kQuadratureCap),
                          c.size(), kQuadratureCap);
    }
    result.method = AverageMethod::quadrature;
    result.order = quad->nodes;
    // The law of a_n eps_n depends only on |a_n|.
    std::vector<double> moduli;
    for (const Scalar& z : c.values()) {
      if (z != Scalar(0.0)) moduli.push_back(std::abs(z));
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    if (moduli.size() <= 2) {
      result.value = moduli.empty()       ? 0.0
                     : moduli.size() == 1 ? moduli[0]
                                          : circle_mean_distance(moduli[1], moduli[0]);
      result.error_bound = 0.0;
      return result;
    }
    const double fine = steinhaus_trapezoid(moduli, quad->nodes, budget);
    const double coarse = steinhaus_trapezoid(moduli, quad->nodes / 2, budget);
    result.value = fine;
    result.error_bound = std::fabs(fine - coarse);
    return result;
  }
  const auto& limit = std::get<EmLimit>(method);
  if (limit.schedule.size() < 2) {
    throw std::invalid_argument("e_m_limit schedule needs at least two orders");
  }
  for (std::size_t i = 0; i < limit.schedule.size(); ++i) {
    if (limit.schedule[i] < 2 || (i > 0 && limit.schedule[i] <= limit.schedule[i - 1])) {
      throw std::invalid_argument("e_m_limit schedule must be increasing orders >= 2");
    }
  }
  const auto& sched = limit.schedule;
  const double last = e_m_average(c, sched.back(), budget).value;
  const double prev = e_m_average(c, sched[sched.size() - 2], budget).value;
  result.method = AverageMethod::e_m_limit;
  result.order = sched.back();
  result.value = last;
  result.error_bound = std::fabs(last - prev);
  return result;
}

double blei_ceiling(int order, const ExtExponent& r) {
  require_r(r);
  if (order < 2) throw std::invalid_argument(fmt::format("E_M needs M >= 2, got {}", order));
  if (order == 2) return std::exp2(r.reciprocal());
  return std::pow(kFourOverPi, r.reciprocal()) / r_m(order);
}

BleiBoundReport blei_bound_check(const CoefficientVector& c, int order, const ExtExponent& r) {
  const double ceiling = blei_ceiling(order, r);
  if (c.is_zero()) throw UndefinedRatioError("blei_bound_check: zero coefficient vector");
  const double ratio = lr_norm(c, r) / e_m_average(c, order).value;
  return BleiBoundReport{order, r, ratio, ceiling, c, ratio > ceiling + 1e-9};
}

ConvergenceReport monitor_e_m_convergence(const CoefficientVector& c, std::span<const int> orders,
                                          double reference) {
  ConvergenceReport report;
  report.reference = reference;
  for (int m : orders) {
    const double gap = std::fabs(e_m_average(c, m).value - reference);
    if (!report.gaps.empty() && gap > report.gaps.back()) report.monotone = false;
    report.orders.push_back(m);
    report.gaps.push_back(gap);
  }
  return report;
}

}  // namespace littlewood
