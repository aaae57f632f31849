#include <cmath>

#include <gtest/gtest.h>

#include "littlewood/errors.hpp"
#include "littlewood/khinchin.hpp"
#include "littlewood/opnorm.hpp"
#include "oracles.hpp"

using namespace littlewood;

namespace {

const ExtExponent kInf = ExtExponent::infinity();

CoefficientVector random_vector(Field field, std::size_t n, std::uint64_t seed,
                                Distribution dist = Distribution::gaussian) {
  const BilinearForm row = random_form(field, 1, n, dist, seed);
  return CoefficientVector(field, {row.entries().begin(), row.entries().end()});
}

std::vector<double> reals(const CoefficientVector& c) {
  std::vector<double> out;
  for (const Scalar& z : c.values()) out.push_back(z.real());
  return out;
}

std::vector<Scalar> values(const CoefficientVector& c) { return {c.values().begin(), c.values().end()}; }

}  // namespace

TEST(CoefficientVector, Validation) {
  EXPECT_THROW(CoefficientVector(Field::real, {}), std::invalid_argument);
  EXPECT_THROW(CoefficientVector(Field::real, {Scalar(0, 1)}), std::invalid_argument);
  EXPECT_THROW(CoefficientVector::real({std::nan("")}), std::invalid_argument);
  EXPECT_TRUE(CoefficientVector::real({0.0, 0.0}).is_zero());
}

TEST(Rademacher, Examples) {
  EXPECT_EQ(rademacher_average(CoefficientVector::real({1, 1})).value, 1.0);
  EXPECT_EQ(rademacher_average(CoefficientVector::real({-2.5})).value, 2.5);
  EXPECT_EQ(rademacher_average(CoefficientVector::real({3, 4})).value, 4.0);
  const AverageResult r = rademacher_average(CoefficientVector::real({1, 2, 3}));
  EXPECT_EQ(r.kind, AverageKind::rademacher);
  EXPECT_EQ(r.method, AverageMethod::enumeration);
  EXPECT_FALSE(r.error_bound);
}

TEST(Rademacher, MatchesDirectEnumeration) {
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const CoefficientVector c = random_vector(Field::real, n, 100 * n + seed);
      const double expected = oracle::rademacher_naive(reals(c));
      EXPECT_NEAR(rademacher_average(c).value, expected, 1e-13 * expected);
    }
  }
}

TEST(Rademacher, Cap) {
  EXPECT_THROW(rademacher_average(CoefficientVector::real(std::vector<double>(31, 1.0))), CapacityError);
}

TEST(Rademacher, ComplexCoefficients) {
  // |1 + i| = |1 - i| = sqrt 2; {1, i}: E|±1 ± i| = sqrt 2.
  EXPECT_DOUBLE_EQ(rademacher_average(CoefficientVector(Field::complex, {Scalar(0, 1)})).value, 1.0);
  EXPECT_DOUBLE_EQ(rademacher_average(CoefficientVector(Field::complex, {Scalar(1, 0), Scalar(0, 1)})).value,
                   std::sqrt(2.0));
}

TEST(KhinchinRatio, Examples) {
  const CoefficientVector ones = CoefficientVector::real({1, 1});
  EXPECT_NEAR(khinchin_ratio(ones, ExtExponent(2.0)), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(khinchin_ratio(ones, kInf), 1.0);
  EXPECT_EQ(khinchin_ratio(CoefficientVector::real({1, 0}), ExtExponent(2.0)), 1.0);
  for (const ExtExponent& r : {ExtExponent(2.0), ExtExponent(2.5), ExtExponent(3.0), ExtExponent(4.0), kInf}) {
    EXPECT_NEAR(khinchin_ratio(ones, r), std::exp2(r.reciprocal()), 1e-12);
  }
  EXPECT_THROW(khinchin_ratio(CoefficientVector::real({0, 0}), ExtExponent(2.0)), UndefinedRatioError);
  EXPECT_THROW(khinchin_ratio(ones, ExtExponent(1.5)), std::invalid_argument);
}

TEST(KhinchinRatio, NeverExceedsCeiling) {
  const Distribution dists[] = {Distribution::gaussian, Distribution::sign, Distribution::sparse_sign};
  for (std::size_t n = 1; n <= 16; ++n) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const CoefficientVector c = random_vector(Field::real, n, 1000 * n + seed, dists[seed % 3]);
      if (c.is_zero()) continue;
      for (const ExtExponent& r : {ExtExponent(2.0), ExtExponent(3.0), ExtExponent(4.0), kInf}) {
        EXPECT_LE(khinchin_ratio(c, r), std::exp2(r.reciprocal()) + 1e-12);
      }
    }
  }
}

TEST(LrNorm, Values) {
  const CoefficientVector c = CoefficientVector::real({3, -4});
  EXPECT_NEAR(lr_norm(c, ExtExponent(2.0)), 5.0, 1e-15);
  EXPECT_EQ(lr_norm(c, kInf), 4.0);
  EXPECT_NEAR(lr_norm(c, ExtExponent(1.0)), 7.0, 1e-15);
}

TEST(EM, Examples) {
  const CoefficientVector ones = CoefficientVector::real({1, 1});
  EXPECT_EQ(e_m_average(ones, 2).value, 1.0);
  // Four aligned pairs give 2, four opposed give 0, eight orthogonal give sqrt 2.
  EXPECT_NEAR(e_m_average(ones, 4).value, (4 * 2.0 + 8 * std::sqrt(2.0)) / 16.0, 1e-15);
  EXPECT_NEAR(e_m_average(ones, 4).value, (1 + std::sqrt(2.0)) / 2, 1e-15);
  const CoefficientVector single(Field::complex, {Scalar(-0.6, 0.8)});
  for (int m : {2, 3, 7, 64}) EXPECT_NEAR(e_m_average(single, m).value, 1.0, 1e-15);
  EXPECT_THROW(e_m_average(ones, 1), std::invalid_argument);
}

TEST(EM, MatchesDirectEnumeration) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int m : {2, 3, 5, 8}) {
      const CoefficientVector c = random_vector(Field::complex, n, 10 * n + m);
      const double expected = oracle::e_m_naive(values(c), m);
      EXPECT_NEAR(e_m_average(c, m).value, expected, 1e-13 * expected) << n << " " << m;
    }
  }
}

TEST(EM, OrderTwoIsRademacher) {
  for (std::size_t n = 1; n <= 14; ++n) {
    const CoefficientVector c = random_vector(Field::real, n, 77 + n);
    const double rad = rademacher_average(c).value;
    EXPECT_NEAR(e_m_average(c, 2).value, rad, 1e-14 * rad);
  }
}

TEST(EM, Budget) {
  const CoefficientVector c = random_vector(Field::complex, 6, 1);
  EXPECT_THROW(e_m_average(c, 64, 1000), CapacityError);
}

TEST(RotationInvariance, Examples) {
  const CoefficientVector ones = CoefficientVector::real({1, 1});
  const double quarter[] = {M_PI / 2, 0.0};
  EXPECT_TRUE(rotation_invariance_check(ones, 4, quarter));
  const CoefficientVector c = random_vector(Field::complex, 4, 5);
  const double zeros[] = {0.0, 0.0, 0.0, 0.0};
  EXPECT_TRUE(rotation_invariance_check(c, 5, zeros));
  const CoefficientVector mixed(Field::complex, {1.0, Scalar(0, 1), -1.0});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    const double shifts[] = {2 * M_PI * pick(rng) / 8, 2 * M_PI * pick(rng) / 8, 2 * M_PI * pick(rng) / 8};
    EXPECT_TRUE(rotation_invariance_check(mixed, 8, shifts));
    // Direct evaluation of both sides.
    std::vector<Scalar> shifted = values(mixed);
    for (int n = 0; n < 3; ++n) shifted[n] *= std::polar(1.0, shifts[n]);
    EXPECT_NEAR(oracle::e_m_naive(shifted, 8), oracle::e_m_naive(values(mixed), 8), 1e-13);
  }
}

TEST(RotationInvariance, RejectsOffGridShifts) {
  const CoefficientVector ones = CoefficientVector::real({1, 1});
  const double off[] = {0.1, 0.0};
  EXPECT_THROW(rotation_invariance_check(ones, 4, off), std::invalid_argument);
  const double wrong_length[] = {0.0};
  EXPECT_THROW(rotation_invariance_check(ones, 4, wrong_length), std::invalid_argument);
}

TEST(CircleMeanDistance, MatchesEllipticIntegral) {
  for (double radius : {0.0, 0.1, 1.0, 2.5, 10.0}) {
    for (double rho : {0.0, 0.3, 1.0, 2.5, 7.0}) {
      const double expected = oracle::circle_mean_trapezoid(radius, rho);
      const double value = circle_mean_distance(radius, rho);
      EXPECT_NEAR(value, expected, 4e-15 * std::max(1.0, expected)) << radius << " " << rho;
      EXPECT_NEAR(value, oracle::circle_mean_ellint(radius, rho), 1e-11 * std::max(1.0, expected));
    }
  }
  EXPECT_NEAR(circle_mean_distance(1.0, 1.0), 4.0 / M_PI, 1e-15);
}

TEST(Steinhaus, ClosedFormForTwoEqualCoefficients) {
  const CoefficientVector ones = CoefficientVector::real({1, 1});
  // (1/2pi) int 2|cos(t/2)| dt by Simpson's rule, and the value 4/pi.
  const double simpson = oracle::circle_average_simpson([](double t) { return 2.0 * std::fabs(std::cos(t / 2)); }, 20000);
  EXPECT_NEAR(simpson, 4.0 / M_PI, 1e-9);
  const AverageResult q = steinhaus_expectation(ones, Quadrature{256});
  EXPECT_NEAR(q.value, 4.0 / M_PI, 1e-12);
  EXPECT_EQ(q.kind, AverageKind::steinhaus);
  EXPECT_EQ(q.method, AverageMethod::quadrature);
  ASSERT_TRUE(q.error_bound);
  const AverageResult e = steinhaus_expectation(ones, EmLimit{{64, 128, 256, 512}});
  EXPECT_NEAR(e.value, 4.0 / M_PI, 1e-4);
  EXPECT_EQ(e.order, 512);
  EXPECT_NEAR(*e.error_bound, std::fabs(e_m_average(ones, 512).value - e_m_average(ones, 256).value), 1e-15);
}

TEST(Steinhaus, SingleCoefficient) {
  const CoefficientVector single(Field::complex, {Scalar(0.0, -2.0)});
  EXPECT_NEAR(steinhaus_expectation(single, Quadrature{16}).value, 2.0, 1e-15);
  EXPECT_NEAR(steinhaus_expectation(single, EmLimit{{4, 8}}).value, 2.0, 1e-15);
}

TEST(Steinhaus, MethodsAgreeForThreeCoefficients) {
  const CoefficientVector c = CoefficientVector::real({1, 1, 1});
  const double q = steinhaus_expectation(c, Quadrature{256}).value;
  const double e = steinhaus_expectation(c, EmLimit{{64, 128, 256, 512}}).value;
  EXPECT_NEAR(q, e, 1e-6);
}

TEST(Steinhaus, QuadratureMatchesDirectDoubleIntegral) {
  // Three coefficients: one angle fixed, the other two by a fine 2-D Simpson rule.
  const CoefficientVector c(Field::complex, {Scalar(1.0, 0.5), Scalar(-0.7, 0.2), Scalar(0.3, 0.0)});
  const auto v = values(c);
  const double direct = oracle::circle_average_simpson(
      [&](double s) {
        return oracle::circle_average_simpson(
            [&](double t) { return std::abs(v[0] * std::polar(1.0, s) + v[1] * std::polar(1.0, t) + v[2]); }, 400);
      },
      400);
  EXPECT_NEAR(steinhaus_expectation(c, Quadrature{128}).value, direct, 1e-7);
}

TEST(Steinhaus, Errors) {
  const CoefficientVector c = CoefficientVector::real({1, 1});
  EXPECT_THROW(steinhaus_expectation(c, EmLimit{{64}}), std::invalid_argument);
  EXPECT_THROW(steinhaus_expectation(c, EmLimit{{64, 32}}), std::invalid_argument);
  EXPECT_THROW(steinhaus_expectation(c, Quadrature{7}), std::invalid_argument);
  EXPECT_THROW(steinhaus_expectation(CoefficientVector::real(std::vector<double>(9, 1.0)), Quadrature{8}),
               CapacityError);
}

TEST(Steinhaus, CeilingOnRandomComplexVectors) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const CoefficientVector c = random_vector(Field::complex, n, 500 + 10 * n + seed);
      const AverageResult avg = steinhaus_expectation(c, Quadrature{n <= 4 ? 128 : 16});
      EXPECT_LE(lr_norm(c, ExtExponent(2.0)) / avg.value, 2.0 / std::sqrt(M_PI) + 1e-6);
    }
  }
}

TEST(Averages, Homogeneity) {
  const CoefficientVector c = random_vector(Field::complex, 4, 42);
  const Scalar lambda(-1.5, 2.0);
  const double factor = std::abs(lambda);
  const CoefficientVector s = c.scaled(lambda);
  for (int m : {3, 8}) {
    EXPECT_NEAR(e_m_average(s, m).value, factor * e_m_average(c, m).value, 1e-12 * factor * e_m_average(c, m).value);
  }
  const double q = steinhaus_expectation(c, Quadrature{64}).value;
  EXPECT_NEAR(steinhaus_expectation(s, Quadrature{64}).value, factor * q, 1e-12 * factor * q);
  const CoefficientVector r = random_vector(Field::real, 9, 43);
  const double rad = rademacher_average(r).value;
  EXPECT_NEAR(rademacher_average(r.scaled(-3.0)).value, 3.0 * rad, 1e-12 * 3.0 * rad);
}

TEST(Blei, Examples) {
  const CoefficientVector ones = CoefficientVector::real({1, 1});
  const BleiBoundReport two = blei_bound_check(ones, 2, ExtExponent(2.0));
  EXPECT_NEAR(two.ratio, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(two.ceiling, std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(two.violated);
  const BleiBoundReport four = blei_bound_check(ones, 4, ExtExponent(2.0));
  EXPECT_NEAR(four.ratio, 2 * std::sqrt(2.0) / (1 + std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(four.ceiling, std::sqrt(4.0 / M_PI) * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(four.ceiling, 1.5958, 1e-4);
  const BleiBoundReport fine = blei_bound_check(ones, 2048, ExtExponent(2.0));
  EXPECT_NEAR(fine.ratio, M_PI * std::sqrt(2.0) / 4, 1e-6);
  EXPECT_LE(fine.ratio, 2.0 / std::sqrt(M_PI));
  EXPECT_THROW(blei_bound_check(CoefficientVector::real({0.0}), 4, ExtExponent(2.0)), UndefinedRatioError);
  EXPECT_THROW(blei_bound_check(ones, 4, ExtExponent(1.5)), std::invalid_argument);
}

TEST(Blei, CeilingValues) {
  EXPECT_NEAR(blei_ceiling(2, ExtExponent(3.0)), std::cbrt(2.0), 1e-15);
  EXPECT_EQ(blei_ceiling(2, kInf), 1.0);
  EXPECT_NEAR(blei_ceiling(3, ExtExponent(2.0)), std::sqrt(4 / M_PI) / 0.5, 1e-15);
  EXPECT_NEAR(blei_ceiling(8, kInf), 1.0 / r_m(8), 1e-15);
}

TEST(Blei, RandomVectorsStayBelowCeiling) {
  for (int m : {2, 3, 4, 8, 16}) {
    const Field field = m == 2 ? Field::real : Field::complex;
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CoefficientVector c = random_vector(field, n, 900 + 10 * n + seed);
        for (const ExtExponent& r : {ExtExponent(2.0), ExtExponent(3.0), kInf}) {
          const BleiBoundReport report = blei_bound_check(c, m, r);
          EXPECT_FALSE(report.violated);
          EXPECT_LE(report.ratio, report.ceiling + 1e-9);
        }
      }
    }
  }
}

TEST(Convergence, MonitorReportsGapsAlongSchedule) {
  for (const CoefficientVector& c :
       {CoefficientVector::real({1, 1}), CoefficientVector::real({1, 0.5, 0.25}), random_vector(Field::complex, 3, 8)}) {
    const double reference = steinhaus_expectation(c, Quadrature{512}).value;
    std::vector<int> orders;
    for (int k = 4; k <= (c.size() == 2 ? 11 : 9); ++k) orders.push_back(1 << k);
    const ConvergenceReport report = monitor_e_m_convergence(c, orders, reference);
    ASSERT_EQ(report.gaps.size(), orders.size());
    EXPECT_EQ(report.orders, orders);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      EXPECT_NEAR(report.gaps[i], std::fabs(e_m_average(c, orders[i]).value - reference), 1e-15);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < report.gaps.size(); ++i) monotone = monotone && report.gaps[i] <= report.gaps[i - 1];
    EXPECT_EQ(report.monotone, monotone);
    EXPECT_LT(report.gaps.back(), 1e-4);
  }
}
