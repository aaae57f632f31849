#include "littlewood/opnorm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "littlewood/errors.hpp"
#include "littlewood/parallel.hpp"

namespace littlewood {

namespace {

constexpr std::uint64_t kBlock = 1u << 12;
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

inline double modulus(const Scalar& z) { return std::sqrt(z.real() * z.real() + z.imag() * z.imag()); }

// base^exp, saturating at uint64 max.
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

}  // namespace

Scalar unit_root(std::int64_t j, std::int64_t order) {
  j %= order;
  if (j < 0) j += order;
  if ((4 * j) % order == 0) {
    switch ((4 * j) / order) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const long double theta = kTwoPiL * static_cast<long double>(j) / static_cast<long double>(order);
  return {static_cast<double>(std::cos(theta)), static_cast<double>(std::sin(theta))};
}

RootsOfUnityGrid::RootsOfUnityGrid(int order) {
  if (order < 2) throw std::invalid_argument(fmt::format("roots-of-unity order must be >= 2, got {}", order));
  points_.reserve(static_cast<std::size_t>(order));
  angles_.reserve(static_cast<std::size_t>(order));
  for (int j = 0; j < order; ++j) {
    points_.push_back(unit_root(j, order));
    angles_.push_back(static_cast<double>(kTwoPiL * j / order));
  }
}

double real_sup_norm(const BilinearForm& form, std::size_t column_cap) {
  if (form.field() != Field::real) {
    throw std::invalid_argument("real_sup_norm requires a real-tagged form");
  }
  const std::size_t rows = form.rows();
  const std::size_t cols = form.cols();
  if (cols > column_cap) {
    throw CapacityError(fmt::format("real_sup_norm: {} columns exceed the enumeration cap of {}",
                                    cols, column_cap),
                        cols, column_cap);
  }
  // Column-major copy of the real parts for the per-flip update.
  std::vector<double> column(rows * cols);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t j = 0; j < cols; ++j) column[j * rows + k] = form(k, j).real();
  }
  const std::uint64_t patterns = std::uint64_t{1} << (cols - 1);

  return parallel_max(patterns, kBlock, [&](std::uint64_t begin, std::uint64_t end) {
    // y_0 = +1 throughout; bit (j - 1) of the Gray code set means y_j = -1.
    std::vector<double> acc(rows, 0.0);
    std::vector<double> sign(cols, 1.0);
    const std::uint64_t gray = begin ^ (begin >> 1);
    for (std::size_t j = 1; j < cols; ++j) sign[j] = ((gray >> (j - 1)) & 1u) ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double* col = &column[j * rows];
      for (std::size_t k = 0; k < rows; ++k) acc[k] += sign[j] * col[k];
    }
    auto objective = [&] {
      double s = 0.0;
      for (double v : acc) s += std::fabs(v);
      return s;
    };
    double best = objective();
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      const std::size_t j = static_cast<std::size_t>(std::countr_zero(i)) + 1;
      const double delta = -2.0 * sign[j];
      sign[j] = -sign[j];
      const double* col = &column[j * rows];
      for (std::size_t k = 0; k < rows; ++k) acc[k] += delta * col[k];
      best = std::max(best, objective());
    }
    return best;
  });
}

namespace {

struct GridCandidate {
  double value = -1.0;
  std::uint64_t index = 0;
};

// Keeps the `limit` best (value desc, index asc) candidates.
void offer(std::vector<GridCandidate>& top, std::size_t limit, GridCandidate c) {
  auto better = [](const GridCandidate& x, const GridCandidate& y) {
    return x.value > y.value || (x.value == y.value && x.index < y.index);
  };
  if (top.size() == limit && !better(c, top.back())) return;
  auto pos = std::lower_bound(top.begin(), top.end(), c, better);
  top.insert(pos, c);
  if (top.size() > limit) top.pop_back();
}

// Enumerates y in T_M^N with y_0 = 1; digit d_j (j >= 1) selects exp(2 pi i d_j / M).
// Index i encodes the digits in base M with d_1 least significant.
std::vector<GridCandidate> enumerate_torus(const BilinearForm& form, int order, std::uint64_t budget,
                                           std::size_t keep) {
  const std::size_t rows = form.rows();
  const std::size_t cols = form.cols();
  const std::uint64_t total = saturating_power(static_cast<std::uint64_t>(order), cols - 1);
  if (total > budget) {
    throw CapacityError(
        fmt::format("complex_norm_discrete: M^(N-1) = {}^{} evaluations exceed the budget of {}",
                    order, cols - 1, budget),
        total, budget);
  }
  const RootsOfUnityGrid grid(order);
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<std::vector<GridCandidate>> partial(blocks);

  for_each_block(total, kBlock, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    std::vector<std::size_t> digit(cols, 0);
    std::uint64_t rest = begin;
    for (std::size_t j = 1; j < cols; ++j) {
      digit[j] = static_cast<std::size_t>(rest % static_cast<std::uint64_t>(order));
      rest /= static_cast<std::uint64_t>(order);
    }
    std::vector<Scalar> acc(rows);
    for (std::size_t k = 0; k < rows; ++k) {
      Scalar s = form(k, 0);
      for (std::size_t j = 1; j < cols; ++j) s += form(k, j) * grid[digit[j]];
      acc[k] = s;
    }
    auto objective = [&] {
      double s = 0.0;
      for (const Scalar& z : acc) s += modulus(z);
      return s;
    };
    std::vector<GridCandidate>& top = partial[b];
    offer(top, keep, {objective(), begin});
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      // Odometer increment starting at digit 1.
      for (std::size_t j = 1; j < cols; ++j) {
        const std::size_t old = digit[j];
        const std::size_t next = old + 1 == static_cast<std::size_t>(order) ? 0 : old + 1;
        digit[j] = next;
        const Scalar step = grid[next] - grid[old];
        for (std::size_t k = 0; k < rows; ++k) acc[k] += form(k, j) * step;
        if (next != 0) break;
      }
      offer(top, keep, {objective(), i});
    }
  });

  std::vector<GridCandidate> merged;
  for (const auto& top : partial) {
    for (const auto& c : top) offer(merged, keep, c);
  }
  return merged;
}

std::vector<Scalar> decode_torus_point(std::uint64_t index, std::size_t cols, int order) {
  std::vector<Scalar> y(cols);
  y[0] = 1.0;
  for (std::size_t j = 1; j < cols; ++j) {
    y[j] = unit_root(static_cast<std::int64_t>(index % static_cast<std::uint64_t>(order)), order);
    index /= static_cast<std::uint64_t>(order);
  }
  return y;
}

void require_order(int order) {
  if (order < 3) throw std::invalid_argument(fmt::format("torus order M must be >= 3, got {}", order));
}

}  // namespace

double complex_norm_discrete(const BilinearForm& form, int order, std::uint64_t budget) {
  require_order(order);
  return enumerate_torus(form, order, budget, 1).front().value;
}

double r_m(int order) {
  require_order(order);
  const double c = unit_root(1, order).real();
  return std::sqrt(0.5 + 0.5 * c);
}

double row_sum_objective(const BilinearForm& form, std::span<const Scalar> y) {
  double total = 0.0;
  for (std::size_t k = 0; k < form.rows(); ++k) {
    Scalar s = 0.0;
    for (std::size_t j = 0; j < form.cols(); ++j) s += form(k, j) * y[j];
    total += modulus(s);
  }
  return total;
}

namespace {

constexpr int kPhaseScan = 64;
constexpr int kMaxSweeps = 200;
constexpr double kSweepTolerance = 1e-12;
constexpr double kAngleTolerance = 1e-12;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0) theta += kTwoPi;
  return theta;
}

}  // namespace

double phase_ascent(const BilinearForm& form, std::vector<Scalar>& y) {
  const std::size_t rows = form.rows();
  const std::size_t cols = form.cols();
  std::vector<Scalar> acc(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t j = 0; j < cols; ++j) acc[k] += form(k, j) * y[j];
  }
  auto total = [&] {
    double s = 0.0;
    for (const Scalar& z : acc) s += modulus(z);
    return s;
  };
  std::vector<Scalar> rest(rows);
  double current = total();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = current;
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < rows; ++k) rest[k] = acc[k] - form(k, j) * y[j];
      auto h = [&](double theta) {
        const Scalar w = std::polar(1.0, theta);
        double s = 0.0;
        for (std::size_t k = 0; k < rows; ++k) s += modulus(rest[k] + form(k, j) * w);
        return s;
      };
      const double theta_now = wrap_angle(std::arg(y[j]));
      const double h_now = h(theta_now);
      double theta_best = theta_now;
      double h_best = h_now;

      if (rows == 1) {
        // |c + a e^{i theta}| peaks where the two terms align.
        if (rest[0] != Scalar(0.0) && form(0, j) != Scalar(0.0)) {
          const double theta = wrap_angle(std::arg(rest[0]) - std::arg(form(0, j)));
          const double value = h(theta);
          if (value > h_best) {
            theta_best = theta;
            h_best = value;
          }
        }
      } else {
        double scan_theta = 0.0;
        double scan_best = -1.0;
        for (int q = 0; q < kPhaseScan; ++q) {
          const double theta = kTwoPi * q / kPhaseScan;
          const double value = h(theta);
          if (value > scan_best) {
            scan_best = value;
            scan_theta = theta;
          }
        }
        // Golden-section refinement of the scan maximizer.
        constexpr double kInvPhi = 0.6180339887498948482;
        double lo = scan_theta - kTwoPi / kPhaseScan;
        double hi = scan_theta + kTwoPi / kPhaseScan;
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = h(x1);
        double f2 = h(x2);
        while (hi - lo > kAngleTolerance) {
          if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = h(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = h(x2);
          }
        }
        double candidates[] = {scan_theta, wrap_angle(0.5 * (lo + hi))};
        std::sort(std::begin(candidates), std::end(candidates));
        for (double theta : candidates) {
          const double value = h(theta);
          if (value > h_best || (value == h_best && theta < theta_best && value > h_now)) {
            theta_best = theta;
            h_best = value;
          }
        }
      }
      if (h_best > h_now) {
        y[j] = std::polar(1.0, theta_best);
        for (std::size_t k = 0; k < rows; ++k) acc[k] = rest[k] + form(k, j) * y[j];
        current = total();
      }
    }
    if (current - before <= kSweepTolerance * std::max(current, 1e-300)) break;
  }
  return current;
}

TorusNormBounds complex_norm_bounds(const BilinearForm& form, int order, bool refine,
                                    std::uint64_t budget) {
  require_order(order);
  constexpr std::size_t kStarts = 8;
  const auto top = enumerate_torus(form, order, budget, refine ? kStarts : 1);
  TorusNormBounds bounds;
  bounds.order = order;
  bounds.r_m = r_m(order);
  bounds.discrete_norm = top.front().value;
  bounds.upper = bounds.discrete_norm / bounds.r_m;
  bounds.lower = bounds.discrete_norm;
  if (refine && bounds.discrete_norm > 0.0) {
    for (const GridCandidate& c : top) {
      auto y = decode_torus_point(c.index, form.cols(), order);
      bounds.lower = std::max(bounds.lower, phase_ascent(form, y));
    }
    bounds.lower = std::min(bounds.lower, bounds.upper);
  }
  return bounds;
}

}  // namespace littlewood
