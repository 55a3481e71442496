#include "zostep/problems/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zostep/numkit/linalg.hpp"

namespace zostep::problems {

SmoothOracle::SmoothOracle(FamilyData data)
    : data_(std::make_shared<const FamilyData>(std::move(data))) {}

SmoothOracle::SmoothOracle(std::shared_ptr<const FamilyData> data) : data_(std::move(data)) {
  if (!data_) throw std::invalid_argument("SmoothOracle: null data");
}

double SmoothOracle::value(const DenseVector& x) {
  ++evals_;
  return problems::value(*data_, x);
}

DenseVector SmoothOracle::gradient(const DenseVector& x) {
  ++grads_;
  return problems::value_grad(*data_, x).grad;
}

ValueGrad SmoothOracle::value_grad(const DenseVector& x) {
  ++evals_;
  ++grads_;
  return problems::value_grad(*data_, x);
}

std::size_t SmoothOracle::dim() const { return data_ ? dimension(*data_) : 0; }

namespace {

double sigma(const DenseMatrix& m) { return numkit::spectral_norm(m).value; }
double sigma_sq(const DenseMatrix& m) { return numkit::spectral_norm(m).value_squared; }

}  // namespace

SmoothnessConstants smoothness_constants(const FamilyData& data, const DenseVector* x0) {
  return std::visit(
      [&](const auto& d) -> SmoothnessConstants {
        using T = std::decay_t<decltype(d)>;
        SmoothnessConstants c;
        if constexpr (std::is_same_v<T, LogisticData>) {
          const double n = static_cast<double>(d.a.rows());
          const double s2 = sigma_sq(d.a);
          // Curvature of softplus(-b z) in z is at most b²/4; b is real-valued by default.
          double b2 = 0.0;
          for (double bi : d.b) b2 = std::max(b2, bi * bi);
          c.paper = s2 / n + d.gamma;
          c.safe = s2 * std::max(1.0, b2 / 4.0) / n + d.gamma;
          c.estimate = c.paper;
        } else if constexpr (std::is_same_v<T, QuadraticData>) {
          c.paper = c.safe = c.estimate = sigma(d.hessian);
        } else if constexpr (std::is_same_v<T, LseData>) {
          const auto s = numkit::spectral_norm(d.a);
          c.paper = s.value;
          c.safe = s.value_squared + d.gamma;
          c.estimate = c.paper;
        } else if constexpr (std::is_same_v<T, MaxCutData>) {
          c.paper = c.estimate = 1.0 / d.eps;
          c.safe = 1.0 / d.eps + 2.0 * d.eta;
        } else if constexpr (std::is_same_v<T, LeastSquaresData>) {
          c.paper = c.safe = c.estimate = 2.0 * sigma_sq(d.a);
        } else {
          const double r = x0 ? norm2(*x0) : 0.0;
          c.paper = c.safe = c.estimate = sigma(d.hessian) + d.m * r;
        }
        return c;
      },
      data);
}

CompositeProblem make_problem(FamilyData data, prox::ProxTerm term, const DenseVector* x0) {
  const SmoothnessConstants c = smoothness_constants(data, x0);
  CompositeProblem p;
  p.smooth = SmoothOracle(std::move(data));
  p.prox_term = term;
  p.L_estimate = c.estimate;
  p.L_paper = c.paper;
  p.L_safe = c.safe;
  if (!(p.L_estimate > 0.0) || !(p.L_safe > 0.0)) {
    throw std::invalid_argument("make_problem: smoothness constant must be positive");
  }
  return p;
}

}  // namespace zostep::problems
