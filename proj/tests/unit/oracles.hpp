#pragma once

// Independent reference computations. Each is a direct transcription of a
// definition, with no shared code paths with the library beyond the matrix type.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "littlewood/forms.hpp"

namespace oracle {

using littlewood::BilinearForm;
using littlewood::Scalar;

inline constexpr double kPi = 3.14159265358979323846;

// (sum_k (sum_j |A_kj|^a)^{b/a})^{1/b}; a or b <= 0 encodes infinity.
inline double mixed_norm(const BilinearForm& form, double a, double b) {
  std::vector<double> rows;
  for (std::size_t k = 0; k < form.rows(); ++k) {
    double inner = 0.0;
    for (std::size_t j = 0; j < form.cols(); ++j) {
      const double m = std::abs(form(k, j));
      inner = a <= 0.0 ? std::max(inner, m) : inner + std::pow(m, a);
    }
    rows.push_back(a <= 0.0 ? inner : std::pow(inner, 1.0 / a));
  }
  double outer = 0.0;
  for (double r : rows) outer = b <= 0.0 ? std::max(outer, r) : outer + std::pow(r, b);
  return b <= 0.0 ? outer : std::pow(outer, 1.0 / b);
}

inline double row_sum(const BilinearForm& form, const std::vector<Scalar>& y) {
  double total = 0.0;
  for (std::size_t k = 0; k < form.rows(); ++k) {
    Scalar s = 0.0;
    for (std::size_t j = 0; j < form.cols(); ++j) s += form(k, j) * y[j];
    total += std::abs(s);
  }
  return total;
}

// Maximum over all 2^N sign vectors, each evaluated from scratch.
inline double real_norm_naive(const BilinearForm& form) {
  const std::size_t n = form.cols();
  double best = 0.0;
  std::vector<Scalar> y(n);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) y[j] = (mask >> j & 1) ? -1.0 : 1.0;
    best = std::max(best, row_sum(form, y));
  }
  return best;
}

// |A(x, y)| at random points of the cube [-1, 1]^K x [-1, 1]^N: a lower bound.
inline double real_norm_cube_sample(const BilinearForm& form, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(form.rows()), y(form.cols());
    for (double& v : x) v = u(rng);
    for (double& v : y) v = u(rng);
    if (s % 2) {  // every other sample is a vertex of the cube
      for (double& v : x) v = v < 0 ? -1.0 : 1.0;
      for (double& v : y) v = v < 0 ? -1.0 : 1.0;
    }
    double value = 0.0;
    for (std::size_t k = 0; k < form.rows(); ++k) {
      for (std::size_t j = 0; j < form.cols(); ++j) value += form(k, j).real() * x[k] * y[j];
    }
    best = std::max(best, std::fabs(value));
  }
  return best;
}

inline Scalar root(long j, long m) { return std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / m); }

// Maximum over the full grid T_M^N (no phase fixing).
inline double complex_norm_grid(const BilinearForm& form, int m) {
  const std::size_t n = form.cols();
  std::vector<long> idx(n, 0);
  std::vector<Scalar> y(n);
  double best = 0.0;
  while (true) {
    for (std::size_t j = 0; j < n; ++j) y[j] = root(idx[j], m);
    best = std::max(best, row_sum(form, y));
    std::size_t j = 0;
    while (j < n && ++idx[j] == m) idx[j++] = 0;
    if (j == n) break;
  }
  return best;
}

// M^{-N} sum over all of Omega_M^N of |sum_n a_n e^{i beta_n}|.
inline double e_m_naive(const std::vector<Scalar>& a, int m) {
  const std::size_t n = a.size();
  std::vector<long> idx(n, 0);
  long double total = 0.0L;
  std::uint64_t count = 0;
  while (true) {
    Scalar s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a[j] * root(idx[j], m);
    total += std::abs(s);
    ++count;
    std::size_t j = 0;
    while (j < n && ++idx[j] == m) idx[j++] = 0;
    if (j == n) break;
  }
  return static_cast<double>(total / count);
}

// 2^{-N} sum over all eta in {-1, 1}^N of |sum_n eta_n a_n|.
inline double rademacher_naive(const std::vector<double>& a) {
  const std::size_t n = a.size();
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += (mask >> j & 1) ? -a[j] : a[j];
    total += std::fabs(s);
  }
  return static_cast<double>(total / static_cast<long double>(1ULL << n));
}

// Mean of |R + rho e^{it}| via the complete elliptic integral of the second kind.
inline double circle_mean_ellint(double radius, double rho) {
  const double s = radius + rho;
  if (s == 0.0) return 0.0;
  const double k = 2.0 * std::sqrt(radius * rho) / s;
  return 2.0 / kPi * s * std::comp_ellint_2(k);
}

// (1/2pi) int |R + rho e^{it}| dt by the periodic trapezoid rule in long double;
// geometric convergence for R != rho, closed form 4R/pi on the diagonal.
inline double circle_mean_trapezoid(double radius, double rho, int nodes = 1 << 16) {
  if (radius == rho) return 4.0 * radius / kPi;
  long double total = 0.0L;
  for (int i = 0; i < nodes; ++i) {
    const long double t = 2.0L * static_cast<long double>(kPi) * i / nodes;
    const long double x = radius + rho * std::cos(t);
    const long double y = rho * std::sin(t);
    total += std::sqrt(x * x + y * y);
  }
  return static_cast<double>(total / nodes);
}

// Composite Simpson rule for (1/2pi) int_0^{2pi} f(t) dt.
template <class F>
double circle_average_simpson(F&& f, int intervals) {
  const double h = 2.0 * kPi / intervals;
  double total = f(0.0) + f(2.0 * kPi);
  for (int i = 1; i < intervals; ++i) total += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return total * h / 3.0 / (2.0 * kPi);
}

}  // namespace oracle
