#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "zostep/numkit/kernels.hpp"
#include "zostep/numkit/linalg.hpp"
#include "zostep/problems/build.hpp"
#include "zostep/problems/problem_file.hpp"
#include "zostep/randgen/recipes.hpp"
#include "zostep/randgen/rng.hpp"
#include "zostep/solvers/solve.hpp"

using namespace zostep;
using namespace zostep::problems;

namespace {

DenseVector randn(randgen::Rng& rng, std::size_t n, double scale = 1.0) {
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scale * rng.next_gaussian();
  return v;
}

DenseMatrix randn_matrix(randgen::Rng& rng, std::size_t r, std::size_t c) {
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.next_gaussian();
  return m;
}

// Central differences, step h, against the analytic gradient.
double fd_error(const FamilyData& data, const DenseVector& x, double h = 1e-6) {
  const DenseVector g = value_grad(data, x).grad;
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    DenseVector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    err = std::max(err, std::abs((value(data, xp) - value(data, xm)) / (2 * h) - g[i]));
  }
  return err / std::max(1.0, norm_inf(g));
}

std::vector<ProblemParams> desk_params(std::uint64_t seed, std::size_t dim = 12) {
  std::vector<ProblemParams> out;
  for (Family f : {Family::LogReg, Family::Quad, Family::Lse, Family::MaxCut, Family::L1LeastSquares,
                   Family::L1Constrained, Family::L1LogReg, Family::Cubic}) {
    ProblemParams p;
    p.family = f;
    p.dim = dim;
    p.seed = seed;
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Logistic, ZeroPointValue) {
  randgen::Rng rng(1);
  LogisticData d{randn_matrix(rng, 5, 5), randn(rng, 5), 0.0};
  EXPECT_NEAR(logistic_value(d, DenseVector(5)), std::log(2.0), 1e-15);
}

TEST(Logistic, ZeroPointGradient) {
  randgen::Rng rng(2);
  LogisticData d{randn_matrix(rng, 6, 4), randn(rng, 6), 0.3};
  const DenseVector g = logistic_value_grad(d, DenseVector(4)).grad;
  for (std::size_t j = 0; j < 4; ++j) {
    double expect = 0.0;
    for (std::size_t i = 0; i < 6; ++i) expect -= d.b[i] * d.a(i, j) / (2.0 * 6.0);
    EXPECT_NEAR(g[j], expect, 1e-14);
  }
}

TEST(Logistic, FiniteDifferences) {
  randgen::Rng rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    LogisticData d{randn_matrix(rng, 5, 5), randn(rng, 5), 0.2};
    EXPECT_LE(fd_error(d, randn(rng, 5)), 1e-5);
  }
}

TEST(Logistic, LargeMarginsStayFinite) {
  LogisticData d{DenseMatrix::from_rows({{1000.0}, {-1000.0}}), DenseVector{1.0, 1.0}, 0.0};
  const auto vg = logistic_value_grad(d, DenseVector{5.0});
  EXPECT_TRUE(std::isfinite(vg.value));
  EXPECT_TRUE(all_finite(vg.grad));
  EXPECT_NEAR(vg.value, 0.5 * 5000.0, 1e-9);
}

TEST(Quadratic, ZeroPoint) {
  QuadraticData d{DenseMatrix::identity(3), DenseVector{1, 2, 3}};
  const auto vg = quadratic_value_grad(d, DenseVector(3));
  EXPECT_EQ(vg.value, 0.0);
  EXPECT_EQ(vg.grad, d.linear);
}

TEST(Quadratic, IdentityHessian) {
  QuadraticData d{DenseMatrix::identity(3), DenseVector(3)};
  const DenseVector x{1, -2, 2};
  const auto vg = quadratic_value_grad(d, x);
  EXPECT_EQ(vg.value, 4.5);
  EXPECT_EQ(vg.grad, x);
}

TEST(Quadratic, FiniteDifferences) {
  randgen::Rng rng(4);
  const DenseMatrix g = randn_matrix(rng, 6, 6);
  QuadraticData d{numkit::gram(g), randn(rng, 6)};
  EXPECT_LE(fd_error(d, randn(rng, 6)), 1e-6);
}

TEST(Lse, SingleTerm) {
  LseData d{DenseMatrix::from_rows({{1.0, -2.0, 0.5}}), DenseVector{0.7}, 0.0};
  const DenseVector x{0.3, 0.1, -1.0};
  const auto vg = lse_value_grad(d, x);
  EXPECT_NEAR(vg.value, 0.3 - 0.2 - 0.5 - 0.7, 1e-14);
  EXPECT_EQ(vg.grad, (DenseVector{1.0, -2.0, 0.5}));
}

TEST(Lse, ZeroDesign) {
  LseData d{DenseMatrix(3, 2), DenseVector{1, 2, 3}, 0.0};
  const auto vg = lse_value_grad(d, DenseVector{4, -4});
  EXPECT_NEAR(vg.value, std::log(std::exp(-1.0) + std::exp(-2.0) + std::exp(-3.0)), 1e-14);
  EXPECT_EQ(norm_inf(vg.grad), 0.0);
}

TEST(Lse, FiniteDifferencesAndOverflow) {
  randgen::Rng rng(5);
  LseData d{randn_matrix(rng, 5, 5), randn(rng, 5), 0.2};
  EXPECT_LE(fd_error(d, randn(rng, 5)), 1e-5);
  const DenseVector far = randn(rng, 5, 1e4);
  EXPECT_TRUE(std::isfinite(lse_value(d, far)));
}

TEST(MaxCut, ZeroDataTwoNodes) {
  MaxCutData d{DenseMatrix(2, 2), 1e-3, 0.01};
  const auto vg = maxcut_value_grad(d, DenseVector(2));
  EXPECT_NEAR(vg.value, 1e-3 * std::log(2.0), 1e-15);
  EXPECT_NEAR(vg.grad[0], -0.5, 1e-12);
  EXPECT_NEAR(vg.grad[1], -0.5, 1e-12);
}

TEST(MaxCut, SmoothPartGradientIsADistribution) {
  randgen::Rng rng(6);
  for (int rep = 0; rep < 10; ++rep) {
    MaxCutData d{randgen::gen_wishart_normalized(rng, 10), 1e-2, 0.05};
    const DenseVector y = randn(rng, 10, 0.3);
    const DenseVector g = maxcut_value_grad(d, y).grad;
    // Undo the linear and quadratic parts: smooth part = g + 1 - 2ηy.
    double total = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
      const double s = g[j] + 1.0 - 2.0 * d.eta * y[j];
      EXPECT_GE(s, -1e-10);
      EXPECT_LE(s, 1.0 + 1e-10);
      total += s;
    }
    EXPECT_NEAR(total, 1.0, 1e-8);
  }
}

TEST(MaxCut, FiniteDifferencesModerateEps) {
  randgen::Rng rng(7);
  MaxCutData d{randgen::gen_wishart_normalized(rng, 4), 0.1, 0.01};
  EXPECT_LE(fd_error(d, randn(rng, 4, 0.5)), 1e-4);
}

TEST(LeastSquares, ExactFit) {
  randgen::Rng rng(8);
  const DenseMatrix a = randn_matrix(rng, 4, 4);
  const DenseVector x = randn(rng, 4);
  LeastSquaresData d{a, numkit::matvec(a, x)};
  const auto vg = least_squares_value_grad(d, x);
  EXPECT_NEAR(vg.value, 0.0, 1e-24);
  EXPECT_LE(norm_inf(vg.grad), 1e-12);
}

TEST(LeastSquares, IdentityDesign) {
  LeastSquaresData d{DenseMatrix::identity(2), DenseVector(2)};
  const auto vg = least_squares_value_grad(d, DenseVector{3, 4});
  EXPECT_EQ(vg.value, 25.0);
  EXPECT_EQ(vg.grad, (DenseVector{6, 8}));
}

TEST(LeastSquares, FiniteDifferences) {
  randgen::Rng rng(9);
  LeastSquaresData d{randn_matrix(rng, 5, 5), randn(rng, 5)};
  EXPECT_LE(fd_error(d, randn(rng, 5)), 1e-6);
}

TEST(Cubic, ZeroPoint) {
  CubicData d{DenseMatrix::identity(2), DenseVector{1, -1}, 5.0};
  const auto vg = cubic_value_grad(d, DenseVector(2));
  EXPECT_EQ(vg.value, 0.0);
  EXPECT_EQ(vg.grad, d.linear);
}

TEST(Cubic, PureCubicTerm) {
  const double m = 3.0;
  CubicData d{DenseMatrix(2, 2), DenseVector(2), m};
  const auto vg = cubic_value_grad(d, DenseVector{2, 0});
  EXPECT_NEAR(vg.value, m / 6.0 * 8.0, 1e-14);
  EXPECT_NEAR(vg.grad[0], 2.0 * m, 1e-14);
  EXPECT_EQ(vg.grad[1], 0.0);
}

TEST(Cubic, FiniteDifferences) {
  randgen::Rng rng(10);
  const DenseMatrix g = randn_matrix(rng, 4, 4);
  CubicData d{numkit::gram(g), randn(rng, 4), 5.0};
  EXPECT_LE(fd_error(d, randn(rng, 4)), 1e-5);
}

TEST(AllFamilies, FiniteDifferencesAtRandomPoints) {
  for (const auto& p : desk_params(77, 8)) {
    const auto inst = build_problem(p);
    FamilyData data = inst.problem.smooth.data();
    if (auto* mc = std::get_if<MaxCutData>(&data)) mc->eps = 0.1;
    randgen::Rng rng(p.seed + 1);
    for (int k = 0; k < 5; ++k) {
      DenseVector x = inst.x0;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.3 * rng.next_gaussian();
      EXPECT_LE(fd_error(data, x), 1e-4) << family_name(p.family);
    }
  }
}

TEST(AllFamilies, ConvexitySpotCheck) {
  for (const auto& p : desk_params(78, 8)) {
    if (p.family == Family::Cubic) continue;
    const auto inst = build_problem(p);
    const auto& data = inst.problem.smooth.data();
    randgen::Rng rng(5);
    for (int k = 0; k < 20; ++k) {
      const DenseVector x = randn(rng, inst.x0.size());
      const DenseVector y = randn(rng, inst.x0.size());
      const double fm = value(data, 0.5 * (x + y));
      const double avg = 0.5 * (value(data, x) + value(data, y));
      EXPECT_LE(fm, avg + 1e-9 * std::max(1.0, std::abs(avg))) << family_name(p.family);
    }
  }
}

TEST(AllFamilies, ExactSmoothnessConstants) {
  for (Family f : {Family::Quad, Family::L1LeastSquares}) {
    ProblemParams p;
    p.family = f;
    p.dim = 10;
    p.seed = 4;
    const auto inst = build_problem(p);
    const auto& data = inst.problem.smooth.data();
    randgen::Rng rng(6);
    for (int k = 0; k < 100; ++k) {
      const DenseVector x = randn(rng, 10);
      const DenseVector y = randn(rng, 10);
      const double lhs = norm2(value_grad(data, x).grad - value_grad(data, y).grad);
      EXPECT_LE(lhs, 1.01 * inst.problem.L_estimate * norm2(x - y));
    }
  }
}

TEST(Oracle, CountersAdvanceByOne) {
  SmoothOracle o(QuadraticData{DenseMatrix::identity(2), DenseVector(2)});
  const DenseVector x{1, 1};
  (void)o.value(x);
  EXPECT_EQ(o.eval_count(), 1);
  EXPECT_EQ(o.grad_count(), 0);
  (void)o.gradient(x);
  EXPECT_EQ(o.grad_count(), 1);
  (void)o.value_grad(x);
  EXPECT_EQ(o.eval_count(), 2);
  EXPECT_EQ(o.grad_count(), 2);
  SmoothOracle copy = o;
  copy.reset_counters();
  EXPECT_EQ(copy.eval_count(), 0);
  EXPECT_EQ(o.eval_count(), 2);
}

TEST(Oracle, SolverCountsMatchOracle) {
  ProblemParams p;
  p.family = Family::LogReg;
  p.dim = 10;
  const auto inst = build_problem(p);
  for (auto kind : {solvers::SolverKind::Alg1, solvers::SolverKind::Alg2, solvers::SolverKind::ArmijoGD}) {
    CompositeProblem prob = inst.problem;
    prob.smooth.reset_counters();
    solvers::SolverOptions o;
    o.max_iter = 50;
    const auto t = solvers::solve(kind, prob, inst.x0, o);
    EXPECT_EQ(t.records.back().f_evals, prob.smooth.eval_count());
    EXPECT_EQ(t.records.back().grad_evals, prob.smooth.grad_count());
  }
}

TEST(Build, IdentityQuadraticHasUnitL) {
  const auto prob = make_problem(QuadraticData{DenseMatrix::identity(3), DenseVector(3)});
  EXPECT_NEAR(prob.L_estimate, 1.0, 1e-12);
}

TEST(Build, MaxCutSmoothness) {
  ProblemParams p;
  p.family = Family::MaxCut;
  p.dim = 100;
  p.eps = 1e-5;
  const auto inst = build_problem(p);
  EXPECT_DOUBLE_EQ(inst.problem.L_estimate, 1e5);
  EXPECT_EQ(inst.x0.size(), 100u);
}

TEST(Build, LogisticConstants) {
  ProblemParams p;
  p.family = Family::LogReg;
  p.dim = 20;
  p.seed = 3;
  const auto inst = build_problem(p);
  const auto& d = std::get<LogisticData>(inst.problem.smooth.data());
  const double s = numkit::spectral_norm(d.a).value;
  EXPECT_NEAR(inst.problem.L_paper, s * s / 20.0 + 1.0 / 20.0, 1e-9);
  EXPECT_GE(inst.problem.L_safe, inst.problem.L_paper);
  EXPECT_DOUBLE_EQ(d.gamma, 1.0 / 20.0);
}

TEST(Build, QuadraticIsNormalized) {
  ProblemParams p;
  p.family = Family::Quad;
  p.dim = 15;
  const auto inst = build_problem(p);
  const auto& d = std::get<QuadraticData>(inst.problem.smooth.data());
  EXPECT_NEAR(numkit::spectral_norm(d.hessian).value, 1.0, 1e-10);
  EXPECT_NEAR(norm2(d.linear), 1.0, 1e-14);
}

TEST(Build, DeterministicAcrossCalls) {
  ProblemParams p;
  p.family = Family::LogReg;
  p.dim = 200;
  p.seed = 9;
  const auto a = build_problem(p);
  const auto b = build_problem(p);
  std::ostringstream sa, sb;
  write_problem(sa, a);
  write_problem(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.problem.L_estimate, b.problem.L_estimate);
}

TEST(Build, CompositeTermsAndFeasibleStart) {
  for (const auto& p : desk_params(5, 10)) {
    const auto inst = build_problem(p);
    EXPECT_EQ(is_composite(p.family), !inst.problem.smooth_only()) << family_name(p.family);
    EXPECT_TRUE(std::isfinite(solvers::objective_uncounted(inst.problem, inst.x0)));
  }
}

TEST(Build, ParseFamilyNames) {
  for (Family f : {Family::LogReg, Family::Quad, Family::Lse, Family::MaxCut, Family::L1LeastSquares,
                   Family::L1Constrained, Family::L1LogReg, Family::Cubic}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_FALSE(parse_family("bogus").has_value());
}

TEST(ProblemFile, RoundTripIsExact) {
  for (const auto& p : desk_params(31, 6)) {
    const auto inst = build_problem(p);
    std::stringstream s;
    write_problem(s, inst);
    const auto back = read_problem(s);
    std::ostringstream again;
    write_problem(again, back);
    EXPECT_EQ(s.str(), again.str()) << family_name(p.family);
    EXPECT_EQ(back.x0, inst.x0);
    EXPECT_EQ(back.problem.L_safe, inst.problem.L_safe);
  }
}

TEST(ProblemFile, MaxCutMetadataSurvives) {
  ProblemParams p;
  p.family = Family::MaxCut;
  p.dim = 100;
  p.eps = 1e-5;
  p.eta = 0.01;
  std::stringstream s;
  write_problem(s, build_problem(p));
  const auto back = read_problem(s);
  EXPECT_EQ(back.params.dim, 100u);
  EXPECT_EQ(back.params.eps, 1e-5);
  EXPECT_EQ(back.params.eta, 0.01);
  const auto& d = std::get<MaxCutData>(back.problem.smooth.data());
  EXPECT_EQ(d.eps, 1e-5);
  EXPECT_EQ(d.eta, 0.01);
}

TEST(ProblemFile, RejectsGarbage) {
  std::istringstream bad("not-a-problem 1\n");
  EXPECT_THROW(read_problem(bad), ProblemFormatError);
  std::istringstream future("zostep-problem 99\n");
  EXPECT_THROW(read_problem(future), ProblemFormatError);
}
