#include <cmath>

#include <gtest/gtest.h>

#include "littlewood/errors.hpp"
#include "littlewood/exponents.hpp"
#include "littlewood/forms.hpp"
#include "littlewood/opnorm.hpp"
#include "oracles.hpp"

using namespace littlewood;

namespace {

const ExtExponent kInf = ExtExponent::infinity();

std::vector<BilinearForm> real_forms(std::size_t count, std::size_t max_dim, std::uint64_t seed) {
  std::vector<BilinearForm> out;
  const Distribution dists[] = {Distribution::gaussian, Distribution::sign, Distribution::sparse_sign};
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_form(Field::real, 1 + i % max_dim, 1 + (i / max_dim) % max_dim, dists[i % 3], seed + i));
  }
  return out;
}

std::vector<BilinearForm> complex_forms(std::size_t count, std::uint64_t seed) {
  std::vector<BilinearForm> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_form(Field::complex, 1 + i % 4, 1 + (i / 4) % 4, Distribution::gaussian, seed + i));
  }
  return out;
}

}  // namespace

TEST(RealSupNorm, Examples) {
  EXPECT_EQ(real_sup_norm(witness_a0(Field::real)), 2.0);
  for (std::size_t n : {1, 2, 5, 9}) {
    std::vector<double> id(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1.0;
    EXPECT_EQ(real_sup_norm(BilinearForm::real(n, n, id)), static_cast<double>(n));
  }
  EXPECT_EQ(real_sup_norm(BilinearForm::real(1, 1, {-2.5})), 2.5);
}

TEST(RealSupNorm, GrayCodeMatchesNaiveEnumeration) {
  for (const BilinearForm& form : real_forms(150, 12, 100)) {
    const double expected = oracle::real_norm_naive(form);
    EXPECT_NEAR(real_sup_norm(form), expected, 1e-12 * expected) << form.rows() << "x" << form.cols();
  }
}

TEST(RealSupNorm, BlockBoundariesMatchNaive) {
  // Column counts around the enumeration block size.
  for (std::size_t n : {12, 13, 14, 15}) {
    const BilinearForm form = random_form(Field::real, 3, n, Distribution::gaussian, n);
    EXPECT_NEAR(real_sup_norm(form), oracle::real_norm_naive(form), 1e-12 * oracle::real_norm_naive(form));
  }
}

TEST(RealSupNorm, DominatesDenseCubeSamples) {
  for (const BilinearForm& form : real_forms(40, 5, 200)) {
    const double norm = real_sup_norm(form);
    const double sampled = oracle::real_norm_cube_sample(form, 4000, 7);
    EXPECT_LE(sampled, norm * (1 + 1e-12));
    EXPECT_GE(sampled, 0.5 * norm);  // dense sampling approaches the extreme points
  }
}

TEST(RealSupNorm, CapsAndFieldChecks) {
  const BilinearForm wide = random_form(Field::real, 1, 25, Distribution::sign, 1);
  try {
    real_sup_norm(wide);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.limit(), kDefaultRealColumnCap);
    EXPECT_EQ(e.required(), 25u);
  }
  EXPECT_THROW(real_sup_norm(random_form(Field::real, 1, 6, Distribution::sign, 1), 5), CapacityError);
  EXPECT_THROW(real_sup_norm(witness_a0(Field::complex)), std::invalid_argument);
}

TEST(RealSupNorm, Scaling) {
  for (const BilinearForm& form : real_forms(30, 6, 300)) {
    EXPECT_NEAR(real_sup_norm(form.scaled(-3.0)), 3.0 * real_sup_norm(form), 1e-12 * 3.0 * real_sup_norm(form));
  }
}

TEST(RootsOfUnity, GridInvariants) {
  for (int m : {2, 3, 4, 7, 12, 64}) {
    const RootsOfUnityGrid grid(m);
    ASSERT_EQ(grid.order(), m);
    for (int j = 0; j < m; ++j) {
      EXPECT_NEAR(std::abs(grid[j]), 1.0, 1e-15);
      EXPECT_NEAR(std::abs(grid[j] - oracle::root(j, m)), 0.0, 1e-15);
      EXPECT_NEAR(grid.angles()[j], 2 * M_PI * j / m, 1e-15);
      for (int k = 0; k < j; ++k) EXPECT_GT(std::abs(grid[j] - grid[k]), 1e-3);
    }
  }
  EXPECT_EQ(unit_root(1, 4), Scalar(0.0, 1.0));
  EXPECT_EQ(unit_root(2, 4), Scalar(-1.0, 0.0));
  EXPECT_EQ(unit_root(3, 12), Scalar(0.0, 1.0));
}

TEST(ComplexNormDiscrete, Examples) {
  const BilinearForm a0 = witness_a0(Field::complex);
  EXPECT_NEAR(complex_norm_discrete(a0, 4), 2.0 * std::sqrt(2.0), 1e-15);
  // Maximum attained at y = (1, i).
  EXPECT_NEAR(oracle::row_sum(a0, {1.0, Scalar(0, 1)}), 2.0 * std::sqrt(2.0), 1e-15);
  const BilinearForm one(Field::complex, 1, 1, {Scalar(3.0, -4.0)});
  for (int m : {3, 5, 16}) EXPECT_NEAR(complex_norm_discrete(one, m), 5.0, 1e-15);
  EXPECT_THROW(complex_norm_discrete(a0, 2), std::invalid_argument);
}

TEST(ComplexNormDiscrete, MatchesFullGridWithoutPhaseFixing) {
  for (const BilinearForm& form : complex_forms(48, 400)) {
    for (int m : {3, 5, 8}) {
      const double expected = oracle::complex_norm_grid(form, m);
      EXPECT_NEAR(complex_norm_discrete(form, m), expected, 1e-12 * expected);
    }
  }
}

TEST(ComplexNormDiscrete, DominatesRealNormForRealEntries) {
  for (const BilinearForm& form : real_forms(30, 5, 500)) {
    const BilinearForm promoted(Field::complex, form.rows(), form.cols(), {form.entries().begin(), form.entries().end()});
    EXPECT_GE(complex_norm_discrete(promoted, 4), real_sup_norm(form) * (1 - 1e-12));
  }
}

TEST(ComplexNormDiscrete, BudgetIsEnforced) {
  const BilinearForm form = random_form(Field::complex, 2, 6, Distribution::gaussian, 1);
  try {
    complex_norm_discrete(form, 16, 1000);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.required(), 1048576u);  // 16^5 with the first coordinate fixed
    EXPECT_EQ(e.limit(), 1000u);
  }
}

TEST(RM, Examples) {
  EXPECT_NEAR(r_m(3), 0.5, 1e-16);
  EXPECT_NEAR(r_m(4), std::sqrt(2.0) / 2.0, 1e-16);
  EXPECT_EQ(r_m(InfiniteOrder{}), 1.0);
  EXPECT_THROW(r_m(2), std::invalid_argument);
  for (int m = 3; m < 200; ++m) {
    EXPECT_LT(r_m(m), r_m(m + 1));
    EXPECT_NEAR(r_m(m), std::sqrt(0.5 + 0.5 * std::cos(2 * M_PI / m)), 1e-15);
  }
  EXPECT_NEAR(r_m(1 << 20), 1.0, 1e-11);
}

TEST(ComplexNormBounds, Examples) {
  const BilinearForm a0 = witness_a0(Field::complex);
  const TorusNormBounds b4 = complex_norm_bounds(a0, 4, true);
  EXPECT_GE(b4.lower, 2.0 * std::sqrt(2.0) * (1 - 1e-15));
  EXPECT_NEAR(b4.upper, 4.0, 1e-15);
  const TorusNormBounds plain = complex_norm_bounds(a0, 4, false);
  EXPECT_NEAR(plain.lower, 2.0 * std::sqrt(2.0), 1e-15);
  const TorusNormBounds b64 = complex_norm_bounds(a0, 64, true);
  EXPECT_LT(b64.upper - b64.lower, 0.02);
  EXPECT_LE(b64.lower, 2.0 * std::sqrt(2.0) * (1 + 1e-12));
  EXPECT_GE(b64.upper, 2.0 * std::sqrt(2.0));
  const TorusNormBounds zero = complex_norm_bounds(BilinearForm::zero(Field::complex, 2, 3), 8, true);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_EQ(zero.upper, 0.0);
}

TEST(ComplexNormBounds, FieldInvariants) {
  for (const BilinearForm& form : complex_forms(24, 600)) {
    for (int m : {3, 6, 10}) {
      for (bool refine : {false, true}) {
        const TorusNormBounds b = complex_norm_bounds(form, m, refine);
        EXPECT_EQ(b.order, m);
        EXPECT_EQ(b.r_m, r_m(m));
        EXPECT_LE(b.discrete_norm, b.lower);
        EXPECT_LE(b.lower, b.upper);
        EXPECT_EQ(b.upper, b.discrete_norm / b.r_m);
      }
    }
  }
}

TEST(ComplexNormBounds, SandwichAcrossNestedGrids) {
  for (const BilinearForm& form : complex_forms(32, 700)) {
    for (int m = 3; m <= 12; ++m) {
      const double coarse = complex_norm_discrete(form, m);
      const double fine = complex_norm_discrete(form, 2 * m);
      EXPECT_LE(coarse, fine * (1 + 1e-12));
      EXPECT_LE(fine, coarse / r_m(m) * (1 + 1e-12));
    }
  }
}

TEST(ComplexNormBounds, RefinedLowerIsAttainedAndBelowEveryUpper) {
  for (const BilinearForm& form : complex_forms(24, 800)) {
    const double upper_fine = complex_norm_discrete(form, 48) / r_m(48);
    for (int m : {3, 4, 6}) {
      const TorusNormBounds b = complex_norm_bounds(form, m, true);
      EXPECT_LE(b.lower, upper_fine * (1 + 1e-12));
    }
  }
}

TEST(ComplexNormBounds, Scaling) {
  for (const BilinearForm& form : complex_forms(12, 900)) {
    const TorusNormBounds b = complex_norm_bounds(form, 8, false);
    const TorusNormBounds s = complex_norm_bounds(form.scaled(Scalar(0.0, -2.0)), 8, false);
    EXPECT_NEAR(s.lower, 2.0 * b.lower, 1e-12 * b.lower);
    EXPECT_NEAR(s.upper, 2.0 * b.upper, 1e-12 * b.upper);
  }
}

TEST(PhaseAscent, ReachesTrueNormOfA0AndNeverDecreases) {
  const BilinearForm a0 = witness_a0(Field::complex);
  std::vector<Scalar> y = {1.0, std::polar(1.0, 0.3)};
  EXPECT_NEAR(phase_ascent(a0, y), 2.0 * std::sqrt(2.0), 1e-12);
  for (const Scalar& z : y) EXPECT_NEAR(std::abs(z), 1.0, 1e-15);
  for (const BilinearForm& form : complex_forms(20, 1000)) {
    std::vector<Scalar> start(form.cols(), 1.0);
    const double before = row_sum_objective(form, start);
    const double after = phase_ascent(form, start);
    EXPECT_GE(after, before * (1 - 1e-15));
    EXPECT_NEAR(after, row_sum_objective(form, start), 1e-12 * after);
  }
}

TEST(PhaseAscent, SingleRowClosedForm) {
  // One row: the maximum is the l1 norm of the row, reached by aligning phases.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BilinearForm row = random_form(Field::complex, 1, 5, Distribution::gaussian, seed);
    std::vector<Scalar> y(5, 1.0);
    double l1 = 0.0;
    for (const Scalar& z : row.entries()) l1 += std::abs(z);
    EXPECT_NEAR(phase_ascent(row, y), l1, 1e-12 * l1);
  }
}

namespace {

// Admissible pairs on a reciprocal grid.
std::vector<ExponentPair> pair_grid() {
  std::vector<ExponentPair> out;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      ExponentPair p{ExtExponent::from_reciprocal(i / 10.0), ExtExponent::from_reciprocal(j / 10.0)};
      if (admissible(p)) out.push_back(p);
    }
  }
  return out;
}

}  // namespace

TEST(Ceilings, MainInequalityOnRandomForms) {
  const auto grid = pair_grid();
  for (const BilinearForm& form : real_forms(120, 12, 1100)) {
    const double norm = real_sup_norm(form);
    for (const ExponentPair& p : grid) {
      EXPECT_LE(mixed_norm(form, p), std::exp2(std::max(0.0, p.deficiency())) * norm + 1e-9);
    }
  }
}

TEST(Ceilings, LemmaBoundsOnRandomForms) {
  for (const BilinearForm& form : real_forms(200, 8, 1200)) {
    const double norm = real_sup_norm(form);
    EXPECT_LE(mixed_norm(form, {ExtExponent(2.0), ExtExponent(2.0)}), norm + 1e-9);
    for (const ExtExponent& a : {ExtExponent(2.0), ExtExponent(3.0), ExtExponent(4.0), kInf}) {
      EXPECT_LE(mixed_norm(form, {a, ExtExponent(1.0)}), std::exp2(a.reciprocal()) * norm + 1e-9);
      EXPECT_LE(mixed_norm(form, {a, conjugate(a)}), norm + 1e-9);
    }
  }
}
