#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "littlewood/forms.hpp"

namespace littlewood {

inline constexpr std::size_t kDefaultRealColumnCap = 24;
inline constexpr std::uint64_t kDefaultComplexBudget = 100'000'000;

/// The M-th roots of unity exp(2 pi i j / M), j = 0..M-1, and their angles.
/// Points on the axes are exact.
class RootsOfUnityGrid {
 public:
  explicit RootsOfUnityGrid(int order);

  int order() const noexcept { return static_cast<int>(points_.size()); }
  std::span<const Scalar> points() const noexcept { return points_; }
  std::span<const double> angles() const noexcept { return angles_; }
  const Scalar& operator[](std::size_t j) const { return points_[j]; }

 private:
  std::vector<Scalar> points_;
  std::vector<double> angles_;
};

/// exp(2 pi i j / M), exact at multiples of a quarter turn.
Scalar unit_root(std::int64_t j, std::int64_t order);

/// Exact real operator norm max_{|x_i|,|y_j| <= 1} |A(x, y)| by enumerating
/// the 2^{N-1} sign vectors y (y and -y agree) in Gray-code order.
/// Throws std::invalid_argument for complex-tagged forms and CapacityError
/// when N exceeds `column_cap`.
double real_sup_norm(const BilinearForm& form, std::size_t column_cap = kDefaultRealColumnCap);

/// ||A||_M: maximum of sum_k |sum_j A_kj y_j| over y in T_M^N, with y_1 = 1
/// fixed by global-phase invariance (M^{N-1} evaluations).
/// Throws std::invalid_argument for M < 3 and CapacityError over `budget`.
double complex_norm_discrete(const BilinearForm& form, int order,
                             std::uint64_t budget = kDefaultComplexBudget);

/// R_M = [1/2 + cos(2 pi / M) / 2]^{1/2}; throws for M < 3.
double r_m(int order);
struct InfiniteOrder {};
/// Limit M -> inf.
constexpr double r_m(InfiniteOrder) noexcept { return 1.0; }

/// Certified interval for the complex operator norm:
/// discrete_norm <= lower <= ||A|| <= upper = discrete_norm / r_m.
struct TorusNormBounds {
  double lower = 0.0;
  double upper = 0.0;
  int order = 0;
  double r_m = 1.0;
  double discrete_norm = 0.0;
};

/// With `refine`, `lower` is raised by coordinate-wise phase ascent started
/// from the best grid points.
TorusNormBounds complex_norm_bounds(const BilinearForm& form, int order, bool refine,
                                    std::uint64_t budget = kDefaultComplexBudget);

/// sum_k |sum_j A_kj y_j| for a given argument y (length N).
double row_sum_objective(const BilinearForm& form, std::span<const Scalar> y);

/// Coordinate-wise continuous phase ascent on unimodular y, in place; returns
/// the final objective. Stops after 200 sweeps or when a sweep gains less than
/// 1e-12 relative.
double phase_ascent(const BilinearForm& form, std::vector<Scalar>& y);

}  // namespace littlewood
