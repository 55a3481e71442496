#include <gtest/gtest.h>

#include <cmath>

#include "zostep/problems/oracle.hpp"
#include "zostep/proxcore/lemma.hpp"
#include "zostep/proxcore/prox.hpp"
#include "zostep/randgen/rng.hpp"

using namespace zostep;
using namespace zostep::prox;

namespace {

DenseVector randn(randgen::Rng& rng, std::size_t n, double scale = 1.0) {
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scale * rng.next_gaussian();
  return v;
}

// argmin_u t|u| + ½(u - x)² on a grid, refined twice.
double grid_soft_threshold(double x, double t) {
  double lo = -std::abs(x) - 1.0, hi = std::abs(x) + 1.0;
  double best = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    const int n = 20000;
    double best_val = INFINITY;
    for (int i = 0; i <= n; ++i) {
      const double u = lo + (hi - lo) * i / n;
      const double v = t * std::abs(u) + 0.5 * (u - x) * (u - x);
      if (v < best_val) {
        best_val = v;
        best = u;
      }
    }
    const double w = (hi - lo) / n * 2.0;
    lo = best - w;
    hi = best + w;
  }
  return best;
}

problems::CompositeProblem small_l1ls(randgen::Rng& rng, std::size_t d, ProxTerm term) {
  DenseMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.next_gaussian();
  return problems::make_problem(problems::LeastSquaresData{a, randn(rng, d)}, term);
}

}  // namespace

TEST(ProxL1, ZeroInput) { EXPECT_EQ(prox_l1(DenseVector(3), 0.7), DenseVector(3)); }

TEST(ProxL1, HandExample) {
  const DenseVector out = prox_l1(DenseVector{3, -1}, 1.0);
  EXPECT_NEAR(out[0], grid_soft_threshold(3, 1), 1e-6);
  EXPECT_NEAR(out[1], grid_soft_threshold(-1, 1), 1e-6);
  EXPECT_EQ(out, (DenseVector{2, 0}));
}

TEST(ProxL1, MatchesGridSearch) {
  randgen::Rng rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    const DenseVector x = randn(rng, 4);
    const DenseVector out = prox_l1(x, 0.3);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(out[i], grid_soft_threshold(x[i], 0.3), 1e-6);
  }
}

TEST(ProxL1, ZeroThresholdIsIdentity) {
  const DenseVector x{1.5, -2.0, 0.0};
  EXPECT_EQ(prox_l1(x, 0.0), x);
  EXPECT_THROW(prox_l1(x, -1.0), std::invalid_argument);
}

TEST(ProjectL1Ball, InteriorUnchanged) {
  const DenseVector x{0.2, -0.3};
  EXPECT_EQ(project_l1_ball(x, 1.0), x);
}

TEST(ProjectL1Ball, AxisPoint) { EXPECT_EQ(project_l1_ball(DenseVector{2, 0}, 1.0), (DenseVector{1, 0})); }

TEST(ProjectL1Ball, SymmetricPoint) {
  const DenseVector out = project_l1_ball(DenseVector{0.6, 0.6}, 1.0);
  EXPECT_NEAR(out[0], 0.5, 1e-15);
  EXPECT_NEAR(out[1], 0.5, 1e-15);
  // Grid search over the boundary segment u + v = 1, u, v >= 0.
  double best = INFINITY, bu = 0;
  for (int i = 0; i <= 100000; ++i) {
    const double u = i / 100000.0;
    const double d = (u - 0.6) * (u - 0.6) + (1 - u - 0.6) * (1 - u - 0.6);
    if (d < best) {
      best = d;
      bu = u;
    }
  }
  EXPECT_NEAR(out[0], bu, 1e-5);
}

TEST(ProjectL1Ball, FeasibleAndNonexpansive) {
  randgen::Rng rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const DenseVector x = randn(rng, 7, 3.0);
    const DenseVector y = randn(rng, 7, 3.0);
    const DenseVector px = project_l1_ball(x, 1.0);
    EXPECT_LE(norm1(px), 1.0 + 1e-10);
    EXPECT_LE(norm2(px - project_l1_ball(y, 1.0)), norm2(x - y) + 1e-12);
    EXPECT_LE(norm2(prox_l1(x, 0.4) - prox_l1(y, 0.4)), norm2(x - y) + 1e-12);
  }
}

TEST(ApplyProx, Dispatch) {
  const DenseVector x{2, 0};
  EXPECT_EQ(apply_prox(ZeroTerm{}, x, 0.3), x);
  EXPECT_EQ(apply_prox(make_l1(1.0), DenseVector{1.0}, 0.5), DenseVector{0.5});
  EXPECT_EQ(apply_prox(make_l1_ball(1.0), x, 0.1), (DenseVector{1, 0}));
  EXPECT_EQ(apply_prox(make_l1_ball(1.0), x, 7.0), (DenseVector{1, 0}));
  EXPECT_THROW(apply_prox(ZeroTerm{}, x, 0.0), std::invalid_argument);
}

TEST(ProxTerm, Validation) {
  EXPECT_THROW(make_l1(0.0), std::invalid_argument);
  EXPECT_THROW(make_l1_ball(-1.0), std::invalid_argument);
  EXPECT_TRUE(is_zero(ZeroTerm{}));
  EXPECT_FALSE(is_zero(make_l1(0.1)));
}

TEST(ProxTerm, Values) {
  EXPECT_EQ(h_value(make_l1(0.5), DenseVector{1, -2}), 1.5);
  EXPECT_EQ(h_value(make_l1_ball(1.0), DenseVector{0.5, 0.5}), 0.0);
  EXPECT_TRUE(std::isinf(h_value(make_l1_ball(1.0), DenseVector{1, 1})));
}

TEST(GradientMapping, ZeroTermReturnsGradient) {
  const DenseVector g{0.3, -1.7};
  const auto r = gradient_mapping(g, DenseVector{5, 6}, 0.37, ZeroTerm{});
  EXPECT_EQ(r.G, g);
  EXPECT_EQ(r.prox_count, 1);
}

TEST(GradientMapping, VanishesAtCompositeMinimizer) {
  // f = ½x², h = |x|, minimizer 0.
  const auto r = gradient_mapping(DenseVector{0.0}, DenseVector{0.0}, 0.5, make_l1(1.0));
  EXPECT_EQ(r.G[0], 0.0);
}

TEST(GradientMapping, HandComposition) {
  // f = ½x², γ = 0.1, x = 1, λ = 0.5: prox(0.5) = 0.45, G = 1.1.
  const auto r = gradient_mapping(DenseVector{1.0}, DenseVector{1.0}, 0.5, make_l1(0.1));
  EXPECT_NEAR(r.G[0], 1.1, 1e-15);
  EXPECT_NEAR(r.x_plus[0], 0.45, 1e-15);
}

TEST(GradientMapping, StepIsRecomputable) {
  randgen::Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const DenseVector x = randn(rng, 5);
    const DenseVector g = randn(rng, 5);
    const double lam = 0.1 + rng.next_uniform();
    for (const ProxTerm& t : {ProxTerm{ZeroTerm{}}, make_l1(0.2), make_l1_ball(1.0)}) {
      const auto r = gradient_mapping(g, x, lam, t);
      EXPECT_EQ(r.x_plus, axpy(x, -lam, r.G));
      EXPECT_LE(norm_inf((1.0 / lam) * (x - r.x_plus) - r.G), 1e-12 * std::max(1.0, norm_inf(x) / lam));
    }
  }
}

TEST(Lemma1ii, ZeroTermHoldsWithZeroSides) {
  const auto c = lemma1_ii(ZeroTerm{}, DenseVector{1, 2}, DenseVector{-1, 3}, 0.5, DenseVector{0.2, 0.1});
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_NEAR(c.rhs, 0.0, 1e-15);
  EXPECT_TRUE(check_lemma1_ii(ZeroTerm{}, DenseVector{1, 2}, DenseVector{-1, 3}, 0.5, DenseVector{0.2, 0.1}));
}

TEST(Lemma1ii, RandomPairsL1) {
  randgen::Rng rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const DenseVector x = randn(rng, 5), y = randn(rng, 5), g = randn(rng, 5);
    EXPECT_TRUE(check_lemma1_ii(make_l1(0.3), x, y, 0.7, g, 1e-9));
  }
}

TEST(Lemma1ii, EqualityAtStepPoint) {
  randgen::Rng rng(5);
  const DenseVector x = randn(rng, 5), g = randn(rng, 5);
  const auto gm = gradient_mapping(g, x, 0.4, make_l1(0.2));
  const auto c = lemma1_ii(make_l1(0.2), x, gm.x_plus, 0.4, g);
  EXPECT_NEAR(c.margin(), 0.0, 1e-12);
}

TEST(Lemma1ii, CorruptedProxIsCaught) {
  randgen::Rng rng(6);
  const ProxTerm term = make_l1(0.3);
  const ProxOperator bad = [](const DenseVector& p, double lam) { return prox_l1(p, 0.3 * lam + 1e-3); };
  int failures = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const DenseVector x = randn(rng, 5), y = randn(rng, 5), g = randn(rng, 5);
    if (!lemma1_ii(term, bad, x, y, 0.5, g).holds(1e-9)) ++failures;
    // Along the implied subgradient the shifted threshold shows up.
    const auto gm = gradient_mapping(g, x, 0.5, bad);
    if (!lemma1_ii(term, bad, x, axpy(gm.x_plus, 0.5, gm.G - g), 0.5, g).holds(1e-9)) ++failures;
  }
  EXPECT_GT(failures, 0);
}

TEST(Lemma1iii, RandomInstancesAcceptedSteps) {
  randgen::Rng rng(7);
  for (const ProxTerm& t : {make_l1(0.2), make_l1_ball(1.0)}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto p = small_l1ls(rng, 5, t);
      DenseVector x = randn(rng, 5), z = randn(rng, 5);
      if (std::holds_alternative<L1BallTerm>(t)) {
        x = project_l1_ball(x, 1.0);
        z = project_l1_ball(z, 1.0);
      }
      const double lam = 1.0 / (3.0 * p.L_estimate);
      const auto c = lemma1_iii(p, x, z, lam);
      EXPECT_LE(c.lhs, c.rhs + 1e-8 * std::max(1.0, std::abs(c.rhs)));
    }
  }
}

TEST(Lemma1iv, ScalarQuadraticAcceptedStep) {
  auto p = problems::make_problem(problems::QuadraticData{DenseMatrix::identity(1), DenseVector(1)});
  EXPECT_LE(lemma1_iv(p, DenseVector{1.0}, 0.25).lhs, 0.0);
  EXPECT_TRUE(check_lemma1_iv_implication(p, DenseVector{1.0}, 0.25));
}

TEST(Lemma1iv, StationaryPoint) {
  auto p = problems::make_problem(problems::QuadraticData{DenseMatrix::identity(2), DenseVector(2)});
  EXPECT_EQ(lemma1_iv(p, DenseVector(2), 0.5).lhs, 0.0);
}
