#pragma once

#include "zostep/problems/oracle.hpp"
#include "zostep/proxcore/prox.hpp"

namespace zostep::prox {

inline constexpr double kLemmaSlack = 1e-9;

/// An inequality lhs <= rhs evaluated numerically. margin() is rhs - lhs;
/// negative margins are violations.
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
  bool holds(double slack) const { return lhs <= rhs + slack; }
};

/// h(x - λG) <= h(y) - <G - ∇f(x), y - (x - λG)>
InequalityCheck lemma1_ii(const ProxTerm& term, const DenseVector& x, const DenseVector& y,
                          double lambda, const DenseVector& f_grad);
/// Same, with G produced by `prox` instead of the exact operator of `term`.
InequalityCheck lemma1_ii(const ProxTerm& term, const ProxOperator& prox, const DenseVector& x,
                          const DenseVector& y, double lambda, const DenseVector& f_grad);

bool check_lemma1_ii(const ProxTerm& term, const DenseVector& x, const DenseVector& y,
                     double lambda, const DenseVector& f_grad, double slack = kLemmaSlack);

/// F(x⁺) - F(z) <= <x⁺-x, ∇f(x⁺) - ∇f(x) + G/2> - ‖x⁺-x‖²/(2λ) - <x⁺-x, x-z>/λ
InequalityCheck lemma1_iii(problems::CompositeProblem& problem, const DenseVector& x,
                           const DenseVector& z, double lambda);

/// <x⁺-x, ∇f(x⁺) - ∇f(x) + G/2> <= 0, the conclusion drawn from an accepted
/// zero-order linesearch step.
InequalityCheck lemma1_iv(problems::CompositeProblem& problem, const DenseVector& x,
                          double lambda);

bool check_lemma1_iv_implication(problems::CompositeProblem& problem, const DenseVector& x,
                                 double lambda, double slack = kLemmaSlack);

}  // namespace zostep::prox
