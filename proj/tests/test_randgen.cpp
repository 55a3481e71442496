#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "zostep/numkit/linalg.hpp"
#include "zostep/randgen/recipes.hpp"
#include "zostep/randgen/rng.hpp"

using namespace zostep;
using namespace zostep::randgen;

// Frozen at first build. A change here means every generated problem changed.
TEST(RngGolden, UniformStream) {
  Rng r(20240501);
  EXPECT_EQ(r.next_uniform(), 0.17255964714666072);
  EXPECT_EQ(r.next_uniform(), 0.48401445151155109);
  EXPECT_EQ(r.next_uniform(), 0.87465872046795745);
}

TEST(RngGolden, GaussianStream) {
  Rng r(20240501);
  EXPECT_EQ(r.next_gaussian(), -0.61239493536560818);
  EXPECT_EQ(r.next_gaussian(), -1.0780398499689756);
  EXPECT_EQ(r.next_gaussian(), 0.091671588354110697);
}

TEST(RngGolden, DerivedSeed) { EXPECT_EQ(derive_seed(42, 3), 12523044466735400969ULL); }

TEST(Rng, UniformIsTop53BitsOfMt19937_64) {
  Rng r(99);
  std::mt19937_64 eng(99);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(r.next_uniform(), static_cast<double>(eng() >> 11) * 0x1.0p-53);
  }
}

TEST(Rng, GaussianIsBoxMullerCosineBranch) {
  Rng r(7);
  std::mt19937_64 eng(7);
  const double two_pi = 6.283185307179586476925286766559;
  for (int i = 0; i < 50; ++i) {
    const double u1 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    const double expect = std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(two_pi * u2);
    EXPECT_NEAR(r.next_gaussian(), expect, 1e-15 * std::max(1.0, std::abs(expect)));
  }
}

TEST(Rng, UniformRange) {
  for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL, ~0ULL}) {
    Rng r(seed);
    for (int i = 0; i < 10000; ++i) {
      const double u = r.next_uniform();
      ASSERT_GE(u, 0.0);
      ASSERT_LT(u, 1.0);
    }
  }
}

TEST(Rng, EqualSeedsGiveEqualStreams) {
  Rng a(555), b(555);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_uniform(), b.next_uniform());
  Rng c(556), d(556);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(c.next_gaussian(), d.next_gaussian());
}

TEST(Rng, GaussianMoments) {
  Rng r(2024);
  const int n = 100000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = r.next_gaussian();
    s += g;
    s2 += g * g;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  EXPECT_LT(std::abs(mean), 0.02);
  EXPECT_LT(std::abs(var - 1.0), 0.03);
}

TEST(Rng, JobStreamsDifferAndRepeat) {
  Rng a = Rng::for_job(10, 0);
  Rng b = Rng::for_job(10, 1);
  Rng c = Rng::for_job(10, 0);
  const double ua = a.next_uniform();
  EXPECT_NE(ua, b.next_uniform());
  EXPECT_EQ(ua, c.next_uniform());
  EXPECT_NE(derive_seed(10, 0), derive_seed(10, 1));
  EXPECT_NE(derive_seed(10, 0), derive_seed(11, 0));
}

TEST(CorrelatedMatrix, SingleEntryIsOneNormal) {
  Rng a(3), b(3);
  const DenseMatrix m = gen_correlated_matrix(a, 1, 1);
  EXPECT_EQ(m(0, 0), b.next_gaussian());
}

TEST(CorrelatedMatrix, AdjacentColumnCorrelation) {
  Rng r(8);
  const std::size_t d = 200, n = 200;
  const DenseMatrix a = gen_correlated_matrix(r, d, n);
  double corr_sum = 0.0;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = a(i, j), y = a(i, j + 1);
      sx += x;
      sy += y;
      sxx += x * x;
      syy += y * y;
      sxy += x * y;
    }
    const double cov = sxy / n - sx / n * sy / n;
    corr_sum += cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  }
  // For stationary columns corr = 0.5 / sqrt(1.25) times a variance ratio near 1.
  EXPECT_NEAR(corr_sum / (d - 1), 0.5 / std::sqrt(1.25), 0.1);
}

TEST(CorrelatedMatrix, ColumnVariances) {
  Rng r(9);
  const std::size_t d = 200, n = 200;
  const DenseMatrix a = gen_correlated_matrix(r, d, n);
  // Var(col j) = 1 + Var(col j-1) / 4 -> 4/3; averaged over the stationary tail.
  double tail = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0, s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_TRUE(std::isfinite(a(i, j)));
      s += a(i, j);
      s2 += a(i, j) * a(i, j);
    }
    const double var = s2 / n - (s / n) * (s / n);
    if (j >= 10) tail += var;
  }
  EXPECT_NEAR(tail / (d - 10), 4.0 / 3.0, 0.05);
}

TEST(CorrelatedMatrix, ColumnRecurrence) {
  Rng r(12), s(12);
  const DenseMatrix a = gen_correlated_matrix(r, 3, 4);
  // Column-major draw order: column 0 first.
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(a(i, 0), s.next_gaussian());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(a(i, 1), 0.5 * a(i, 0) + s.next_gaussian());
}

TEST(CorrelatedMatrix, Deterministic) {
  Rng a(4), b(4);
  EXPECT_EQ(gen_correlated_matrix(a, 7, 5), gen_correlated_matrix(b, 7, 5));
}

TEST(RegressionTarget, ZeroDesignIsNoise) {
  Rng r(21);
  const DenseMatrix a(200, 5);
  const auto t = gen_regression_target(r, a);
  double mean = 0.0;
  for (std::size_t i = 0; i < 200; ++i) mean += t.b[i];
  mean /= 200.0;
  // sd of the mean is 0.05 / sqrt(200) ≈ 0.0035.
  EXPECT_LE(std::abs(mean), 0.0106);
  EXPECT_LT(norm_inf(t.b), 0.05 * 5.0);
}

TEST(RegressionTarget, NoiselessIsExact) {
  Rng r(22);
  const DenseMatrix a = gen_correlated_matrix(r, 4, 6);
  const auto t = gen_regression_target(r, a, 0.0);
  for (std::size_t i = 0; i < 6; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j) acc += a(i, j) * t.x_nat[j];
    EXPECT_NEAR(t.b[i], acc, 1e-14 * std::max(1.0, std::abs(acc)));
  }
}

TEST(RegressionTarget, Deterministic) {
  Rng r1(30), r2(30);
  const DenseMatrix a = DenseMatrix::identity(3);
  const auto t1 = gen_regression_target(r1, a);
  const auto t2 = gen_regression_target(r2, a);
  EXPECT_EQ(t1.x_nat, t2.x_nat);
  EXPECT_EQ(t1.b, t2.b);
}

TEST(Wishart, ScalarCaseIsOne) {
  Rng r(1);
  EXPECT_NEAR(gen_wishart_normalized(r, 1)(0, 0), 1.0, 1e-15);
}

TEST(Wishart, SymmetricPsdUnitNorm) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Rng r(seed);
    const DenseMatrix c = gen_wishart_normalized(r, 20);
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 20; ++j) EXPECT_NEAR(c(i, j), c(j, i), 1e-12);
    const DenseVector ev = numkit::jacobi_eigenvalues(c);
    EXPECT_GE(ev[ev.size() - 1], -1e-10);
    EXPECT_NEAR(numkit::spectral_norm(c).value, 1.0, 1e-6);
  }
}

TEST(Uniform, MatrixAndVectorRanges) {
  Rng r(5);
  const DenseMatrix m = gen_uniform_matrix(r, 10, 10, 5.0);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) {
      EXPECT_GE(m(i, j), 0.0);
      EXPECT_LT(m(i, j), 5.0);
    }
  const DenseVector v = gen_uniform_vector(r, 30);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_GE(v[i], 0.0);
    EXPECT_LT(v[i], 1.0);
  }
}
