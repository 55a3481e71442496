#include "zostep/problems/build.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "zostep/numkit/kernels.hpp"
#include "zostep/numkit/linalg.hpp"
#include "zostep/randgen/recipes.hpp"

namespace zostep::problems {

namespace {

using randgen::Rng;

void binarize(DenseVector& b) {
  for (double& v : b) v = v >= 0.0 ? 1.0 : -1.0;
}

LogisticData logistic_data(Rng& rng, const ProblemParams& p) {
  LogisticData d;
  d.a = randgen::gen_correlated_matrix(rng, p.dim, p.sample_count());
  d.b = randgen::gen_regression_target(rng, d.a, p.noise_sd).b;
  if (p.binarize_labels) binarize(d.b);
  d.gamma = p.gamma_value();
  return d;
}

QuadraticData quadratic_data(Rng& rng, const ProblemParams& p) {
  const DenseMatrix a = randgen::gen_correlated_matrix(rng, p.dim, p.dim);
  DenseVector b = randgen::gen_regression_target(rng, a, p.noise_sd).b;
  DenseMatrix bmat = numkit::gram(a);
  bmat *= 1.0 / numkit::spectral_norm(bmat).value;
  b *= 1.0 / norm2(b);
  return {std::move(bmat), std::move(b)};
}

LseData lse_data(Rng& rng, const ProblemParams& p) {
  LseData d;
  d.a = randgen::gen_correlated_matrix(rng, p.dim, p.sample_count());
  d.b = randgen::gen_regression_target(rng, d.a, p.noise_sd).b;
  d.gamma = p.gamma_value();
  return d;
}

// Hessian and gradient of the logistic loss at the origin.
CubicData cubic_data(Rng& rng, const ProblemParams& p) {
  const LogisticData lg = logistic_data(rng, p);
  const std::size_t n = lg.a.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  DenseMatrix scaled = lg.a;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::abs(lg.b[i]) * std::sqrt(0.25 * inv_n);
    for (double& v : scaled.row(i)) v *= w;
  }
  CubicData d;
  d.hessian = numkit::gram(scaled);
  for (std::size_t j = 0; j < p.dim; ++j) d.hessian(j, j) += lg.gamma;
  d.linear = logistic_value_grad(lg, DenseVector(p.dim)).grad;
  d.m = p.cubic_m;
  return d;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::size_t default_dim(Family family, bool paper_scale) {
  if (family == Family::MaxCut) return paper_scale ? kPaperMaxCutDim : kDeskMaxCutDim;
  return paper_scale ? kPaperDim : kDeskDim;
}

std::string recipe_name(Family family) {
  switch (family) {
    case Family::LogReg:
    case Family::Lse:
    case Family::Cubic:
      return "correlated-gaussian";
    case Family::Quad:
      return "correlated-gaussian-normalized-gram";
    case Family::MaxCut:
      return "wishart-normalized";
    case Family::L1LeastSquares:
    case Family::L1Constrained:
    case Family::L1LogReg:
      return "uniform";
  }
  return "unknown";
}

std::string instance_name(const ProblemParams& p) {
  std::string name = std::string(family_name(p.family)) + "_d" + std::to_string(p.dim);
  if (p.sample_count() != p.dim && p.family != Family::Quad && p.family != Family::MaxCut) {
    name += "_n" + std::to_string(p.sample_count());
  }
  if (p.family == Family::MaxCut) name += "_eta" + format_number(p.eta);
  if (p.family == Family::Cubic) name += "_M" + format_number(p.cubic_m);
  return name + "_s" + std::to_string(p.seed);
}

ProblemInstance build_problem(const ProblemParams& p) {
  if (p.dim == 0) throw std::invalid_argument("build_problem: dim must be positive");
  if (p.family == Family::MaxCut && !(p.eps > 0.0)) {
    throw std::invalid_argument("build_problem: eps must be positive");
  }
  if (p.family == Family::Cubic && !(p.cubic_m > 0.0)) {
    throw std::invalid_argument("build_problem: cubic M must be positive");
  }
  Rng rng(p.seed);
  const std::size_t n = p.sample_count();
  FamilyData data;
  prox::ProxTerm term = prox::ZeroTerm{};

  switch (p.family) {
    case Family::LogReg:
      data = logistic_data(rng, p);
      break;
    case Family::Quad:
      data = quadratic_data(rng, p);
      break;
    case Family::Lse:
      data = lse_data(rng, p);
      break;
    case Family::MaxCut:
      data = MaxCutData{randgen::gen_wishart_normalized(rng, p.dim), p.eps, p.eta};
      break;
    case Family::Cubic:
      data = cubic_data(rng, p);
      break;
    case Family::L1LeastSquares:
    case Family::L1Constrained:
    case Family::L1LogReg: {
      DenseMatrix a = randgen::gen_uniform_matrix(rng, n, p.dim, p.uniform_scale);
      DenseVector b = randgen::gen_uniform_vector(rng, n);
      if (p.family == Family::L1LogReg) {
        data = LogisticData{std::move(a), std::move(b), 0.0};
        term = prox::make_l1(p.gamma_value());
      } else {
        data = LeastSquaresData{std::move(a), std::move(b)};
        term = p.family == Family::L1LeastSquares ? prox::ProxTerm(prox::make_l1(p.gamma_value()))
                                                  : prox::ProxTerm(prox::make_l1_ball(p.radius));
      }
      break;
    }
  }

  ProblemInstance inst;
  inst.params = p;
  inst.x0 = randgen::gaussian_vector(rng, p.dim);
  // The constrained family starts from the projection so F(x0) is finite.
  if (p.family == Family::L1Constrained) inst.x0 = prox::project_l1_ball(inst.x0, p.radius);
  inst.problem = make_problem(std::move(data), term, &inst.x0);
  return inst;
}

}  // namespace zostep::problems
