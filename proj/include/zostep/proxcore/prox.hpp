#pragma once

#include <functional>
#include <string>
#include <variant>

#include "zostep/numkit/dense.hpp"

namespace zostep::prox {

/// h = 0
struct ZeroTerm {
  bool operator==(const ZeroTerm&) const = default;
};

/// h = gamma ‖x‖₁, gamma > 0
struct L1Term {
  double gamma;
  bool operator==(const L1Term&) const = default;
};

/// h = indicator of {‖x‖₁ ≤ radius}, radius > 0
struct L1BallTerm {
  double radius;
  bool operator==(const L1BallTerm&) const = default;
};

using ProxTerm = std::variant<ZeroTerm, L1Term, L1BallTerm>;

ProxTerm make_l1(double gamma);
ProxTerm make_l1_ball(double radius);

bool is_zero(const ProxTerm& term);
std::string describe(const ProxTerm& term);

/// Feasibility slack used when evaluating the L1-ball indicator, relative to
/// max(1, radius). Iterates formed as x - λG can sit a few ulps outside the
/// ball after a projection.
inline constexpr double kBallSlack = 1e-9;

/// h(x). The L1-ball indicator returns +inf outside the (slackened) ball.
double h_value(const ProxTerm& term, const DenseVector& x);

/// sign(xᵢ) max(|xᵢ| - t, 0) for t >= 0
DenseVector prox_l1(const DenseVector& x, double t);

/// Euclidean projection onto {‖y‖₁ ≤ r} by sorting magnitudes and
/// soft-thresholding at the unique level that lands on the sphere.
DenseVector project_l1_ball(const DenseVector& x, double r);

/// prox_{λh}(x)
DenseVector apply_prox(const ProxTerm& term, const DenseVector& x, double lambda);

/// A prox map (point, λ) -> prox_{λh}(point). Lets tests and audits swap in
/// a deliberately wrong operator.
using ProxOperator = std::function<DenseVector(const DenseVector&, double)>;

ProxOperator prox_operator(const ProxTerm& term);

struct GradMapResult {
  DenseVector G;       // (x - prox_{λh}(x - λ∇f(x))) / λ
  DenseVector x_plus;  // x - λG
  int prox_count = 0;
};

/// Gradient mapping at x for stepsize λ given ∇f(x). For the zero term G is
/// a copy of f_grad.
GradMapResult gradient_mapping(const DenseVector& f_grad, const DenseVector& x, double lambda,
                               const ProxTerm& term);

GradMapResult gradient_mapping(const DenseVector& f_grad, const DenseVector& x, double lambda,
                               const ProxOperator& prox);

}  // namespace zostep::prox
