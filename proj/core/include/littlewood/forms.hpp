#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "littlewood/exponents.hpp"

namespace littlewood {

using Scalar = std::complex<double>;

/// A finite bilinear form stored as its K x N matrix, entry(k, j) = A(e_k, e_j).
/// Rows index the first argument. Immutable after construction.
class BilinearForm {
 public:
  /// Throws std::invalid_argument on empty shape, size mismatch, non-finite
  /// entries, or nonzero imaginary parts in a real-tagged form.
  BilinearForm(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static BilinearForm real(std::size_t rows, std::size_t cols, const std::vector<double>& entries);
  static BilinearForm zero(Field field, std::size_t rows, std::size_t cols);

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Scalar& operator()(std::size_t k, std::size_t j) const { return entries_[k * cols_ + j]; }
  std::span<const Scalar> row(std::size_t k) const { return {entries_.data() + k * cols_, cols_}; }
  std::span<const Scalar> entries() const noexcept { return entries_; }

  /// Largest entry modulus; 0 for the zero form.
  double max_abs() const noexcept;
  bool is_zero() const noexcept { return max_abs() == 0.0; }

  /// c * A. A real-tagged form accepts only real c.
  BilinearForm scaled(Scalar c) const;

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

/// Mixed l_b(l_a) norm: (sum_k (sum_j |A_kj|^a)^{b/a})^{1/b}, inner level over
/// columns, outer level over rows; an infinite exponent is an exact maximum.
double mixed_norm(const BilinearForm& form, const ExponentPair& pair);

BilinearForm transpose(const BilinearForm& form);

/// The extremal 2 x 2 witness [[1, 1], [1, -1]].
BilinearForm witness_a0(Field field);

/// Single nonzero entry 1 at (0, 0); attains ratio 1 for every pair.
BilinearForm single_entry(Field field, std::size_t rows, std::size_t cols);

enum class Distribution { gaussian, sign, sparse_sign };

std::string_view to_string(Distribution distribution);
Distribution parse_distribution(std::string_view text);

/// Deterministic in `seed`. Gaussian entries are N(0, 1) (independent real and
/// imaginary parts in complex mode). Sign entries lie in {-1, 1} or in the
/// fourth roots of unity; sparse-sign zeroes each entry with probability 1/2.
BilinearForm random_form(Field field, std::size_t rows, std::size_t cols,
                         Distribution distribution, std::uint64_t seed);

/// {"field", "rows", "cols", "entries"} with entries row-major; each entry is
/// [re, im] in complex mode and [re] in real mode.
nlohmann::json to_json(const BilinearForm& form);
/// Throws ParseError naming the offending field.
BilinearForm form_from_json(const nlohmann::json& doc);

}  // namespace littlewood
