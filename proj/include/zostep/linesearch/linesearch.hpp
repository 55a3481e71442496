#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zostep/problems/oracle.hpp"
#include "zostep/proxcore/prox.hpp"

namespace zostep::linesearch {

struct LinesearchConfig {
  double factor = 0.5;       // C, candidates are lambda_start * C^i
  double lambda_init = 1.0;  // start when no warm start is available
  int max_backtracks = 60;
  double slack = 1e-12;      // relative to max(1, |phi(lambda)|)

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Absolute acceptance slack for a given phi(lambda).
double acceptance_slack(double phi_lambda, double relative_slack);

/// One evaluation of phi(2λ) <= phi(λ) - λ<G, ∇f(x)> + (λ/2)‖G‖², phi(t) = f(x - tG).
struct ZoEvaluation {
  bool holds = false;
  double lambda = 0.0;
  DenseVector G;
  DenseVector x_plus;  // x - λG
  double phi_lambda = 0.0;
  double phi_2lambda = 0.0;
  double rhs = 0.0;    // right-hand side without slack
  int f_evals = 0;
  int prox_evals = 0;
};

ZoEvaluation zo_condition(problems::CompositeProblem& problem, const DenseVector& x,
                          const DenseVector& f_grad, double lambda, double slack = 1e-12);

/// Smooth form phi(2λ) <= phi(λ) - (λ/2)‖∇f(x)‖², used to cross-check the general path.
bool zo_condition_smooth(double phi_lambda, double phi_2lambda, double grad_norm_sq, double lambda,
                         double slack = 1e-12);

/// 2(f_prev - f_cur) / grad_norm_sq when finite and positive, else `fallback`.
double warm_start_lambda(double f_prev, double f_cur, double grad_norm_sq, double fallback);

struct LinesearchOutcome {
  double lambda = 0.0;
  DenseVector G;
  DenseVector x_plus;
  double phi_lambda = 0.0;
  int f_evals = 0;
  int prox_evals = 0;
  int backtracks = 0;
  std::vector<double> trials;  // every λ tested, in order
};

class LinesearchError : public std::runtime_error {
 public:
  LinesearchError(const std::string& what, double best_lambda, int attempts, bool saw_nonfinite)
      : std::runtime_error(what),
        best_lambda_(best_lambda),
        attempts_(attempts),
        saw_nonfinite_(saw_nonfinite) {}

  double best_lambda() const noexcept { return best_lambda_; }
  int attempts() const noexcept { return attempts_; }
  bool saw_nonfinite() const noexcept { return saw_nonfinite_; }

 private:
  double best_lambda_;
  int attempts_;
  bool saw_nonfinite_;
};

/// Largest λ in {lambda_start * C^i : 0 <= i <= max_backtracks} passing zo_condition.
LinesearchOutcome backtrack(problems::CompositeProblem& problem, const DenseVector& x,
                            const DenseVector& f_grad, double lambda_start,
                            const LinesearchConfig& cfg);

struct IntervalAudit {
  double lambda = 0.0;
  double upper = 0.0;      // 2(f(y1) - f(y2)) / ‖∇f(x)‖²
  double tolerance = 0.0;  // 1e-9 plus the acceptance slack carried over
  bool holds = false;
};

using ValueFn = std::function<double(const DenseVector&)>;

/// Smooth case: λ <= 2(f(x - λ∇f) - f(x - 2λ∇f)) / ‖∇f(x)‖² for an accepted λ.
IntervalAudit stepsize_interval_audit(const DenseVector& x, double lambda, const ValueFn& f,
                                      const DenseVector& f_grad, double relative_slack = 1e-12);

}  // namespace zostep::linesearch
