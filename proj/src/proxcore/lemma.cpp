#include "zostep/proxcore/lemma.hpp"

#include "zostep/numkit/kernels.hpp"

namespace zostep::prox {

using numkit::dot;

InequalityCheck lemma1_ii(const ProxTerm& term, const ProxOperator& prox, const DenseVector& x,
                          const DenseVector& y, double lambda, const DenseVector& f_grad) {
  const GradMapResult gm = gradient_mapping(f_grad, x, lambda, prox);
  InequalityCheck c;
  c.lhs = h_value(term, gm.x_plus);
  c.rhs = h_value(term, y) - dot(gm.G - f_grad, y - gm.x_plus);
  return c;
}

InequalityCheck lemma1_ii(const ProxTerm& term, const DenseVector& x, const DenseVector& y,
                          double lambda, const DenseVector& f_grad) {
  return lemma1_ii(term, prox_operator(term), x, y, lambda, f_grad);
}

bool check_lemma1_ii(const ProxTerm& term, const DenseVector& x, const DenseVector& y,
                     double lambda, const DenseVector& f_grad, double slack) {
  return lemma1_ii(term, x, y, lambda, f_grad).holds(slack);
}

namespace {

// <x⁺-x, ∇f(x⁺) - ∇f(x) + G/2>
double bad_term(const DenseVector& step, const DenseVector& grad_plus, const DenseVector& grad,
                const DenseVector& g) {
  return dot(step, axpy(grad_plus - grad, 0.5, g));
}

}  // namespace

InequalityCheck lemma1_iii(problems::CompositeProblem& problem, const DenseVector& x,
                           const DenseVector& z, double lambda) {
  const DenseVector grad = problem.smooth.gradient(x);
  const GradMapResult gm = gradient_mapping(grad, x, lambda, problem.prox_term);
  const DenseVector grad_plus = problem.smooth.gradient(gm.x_plus);
  const DenseVector step = gm.x_plus - x;
  InequalityCheck c;
  c.lhs = problem.objective(gm.x_plus) - problem.objective(z);
  c.rhs = bad_term(step, grad_plus, grad, gm.G) - norm_sq(step) / (2.0 * lambda) -
          dot(step, x - z) / lambda;
  return c;
}

InequalityCheck lemma1_iv(problems::CompositeProblem& problem, const DenseVector& x,
                          double lambda) {
  const DenseVector grad = problem.smooth.gradient(x);
  const GradMapResult gm = gradient_mapping(grad, x, lambda, problem.prox_term);
  const DenseVector grad_plus = problem.smooth.gradient(gm.x_plus);
  InequalityCheck c;
  c.lhs = bad_term(gm.x_plus - x, grad_plus, grad, gm.G);
  c.rhs = 0.0;
  return c;
}

bool check_lemma1_iv_implication(problems::CompositeProblem& problem, const DenseVector& x,
                                 double lambda, double slack) {
  return lemma1_iv(problem, x, lambda).holds(slack);
}

}  // namespace zostep::prox
