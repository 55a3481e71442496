#include "zostep/linesearch/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zostep/numkit/kernels.hpp"

namespace zostep::linesearch {

namespace {
constexpr double kIntervalTol = 1e-9;
}

void LinesearchConfig::validate() const {
  if (!(factor > 0.0 && factor < 1.0)) throw std::invalid_argument("linesearch factor must lie in (0,1)");
  if (!(lambda_init > 0.0) || !std::isfinite(lambda_init)) {
    throw std::invalid_argument("lambda_init must be positive and finite");
  }
  if (max_backtracks < 1) throw std::invalid_argument("max_backtracks must be at least 1");
  if (!(slack >= 0.0)) throw std::invalid_argument("linesearch slack must be nonnegative");
}

double acceptance_slack(double phi_lambda, double relative_slack) {
  return relative_slack * std::max(1.0, std::abs(phi_lambda));
}

ZoEvaluation zo_condition(problems::CompositeProblem& problem, const DenseVector& x,
                          const DenseVector& f_grad, double lambda, double slack) {
  ZoEvaluation ev;
  ev.lambda = lambda;
  prox::GradMapResult gm = prox::gradient_mapping(f_grad, x, lambda, problem.prox_term);
  ev.prox_evals = gm.prox_count;
  ev.G = std::move(gm.G);
  ev.x_plus = std::move(gm.x_plus);
  ev.phi_lambda = problem.smooth.value(ev.x_plus);
  ev.phi_2lambda = problem.smooth.value(axpy(x, -2.0 * lambda, ev.G));
  ev.f_evals = 2;
  ev.rhs = ev.phi_lambda - lambda * numkit::dot(ev.G, f_grad) + 0.5 * lambda * norm_sq(ev.G);
  ev.holds = std::isfinite(ev.phi_lambda) && std::isfinite(ev.phi_2lambda) &&
             ev.phi_2lambda <= ev.rhs + acceptance_slack(ev.phi_lambda, slack);
  return ev;
}

bool zo_condition_smooth(double phi_lambda, double phi_2lambda, double grad_norm_sq, double lambda,
                         double slack) {
  if (!std::isfinite(phi_lambda) || !std::isfinite(phi_2lambda)) return false;
  return phi_2lambda <= phi_lambda - 0.5 * lambda * grad_norm_sq + acceptance_slack(phi_lambda, slack);
}

double warm_start_lambda(double f_prev, double f_cur, double grad_norm_sq, double fallback) {
  const double v = 2.0 * (f_prev - f_cur) / grad_norm_sq;
  return (std::isfinite(v) && v > 0.0) ? v : fallback;
}

LinesearchOutcome backtrack(problems::CompositeProblem& problem, const DenseVector& x,
                            const DenseVector& f_grad, double lambda_start,
                            const LinesearchConfig& cfg) {
  if (!(lambda_start > 0.0) || !std::isfinite(lambda_start)) {
    throw std::invalid_argument("backtrack: lambda_start must be positive and finite");
  }
  LinesearchOutcome out;
  bool nonfinite = false;
  double lambda = lambda_start;
  for (int i = 0; i <= cfg.max_backtracks; ++i) {
    ZoEvaluation ev = zo_condition(problem, x, f_grad, lambda, cfg.slack);
    out.trials.push_back(lambda);
    out.f_evals += ev.f_evals;
    out.prox_evals += ev.prox_evals;
    if (ev.holds) {
      out.lambda = lambda;
      out.G = std::move(ev.G);
      out.x_plus = std::move(ev.x_plus);
      out.phi_lambda = ev.phi_lambda;
      out.backtracks = i;
      return out;
    }
    nonfinite = nonfinite || !std::isfinite(ev.phi_lambda) || !std::isfinite(ev.phi_2lambda);
    lambda *= cfg.factor;
  }
  const double best = out.trials.back();
  throw LinesearchError("zero-order linesearch rejected " + std::to_string(out.trials.size()) +
                            " candidates down to lambda=" + std::to_string(best) +
                            (nonfinite ? " (non-finite objective values seen)" : ""),
                        best, static_cast<int>(out.trials.size()), nonfinite);
}

IntervalAudit stepsize_interval_audit(const DenseVector& x, double lambda, const ValueFn& f,
                                      const DenseVector& f_grad, double relative_slack) {
  IntervalAudit a;
  a.lambda = lambda;
  const double n = norm_sq(f_grad);
  const double phi1 = f(axpy(x, -lambda, f_grad));
  const double phi2 = f(axpy(x, -2.0 * lambda, f_grad));
  if (n == 0.0) {
    a.upper = std::numeric_limits<double>::infinity();
    a.holds = true;
    return a;
  }
  a.upper = 2.0 * (phi1 - phi2) / n;
  a.tolerance = kIntervalTol + 2.0 * acceptance_slack(phi1, relative_slack) / n;
  a.holds = std::isfinite(a.upper) && lambda <= a.upper + a.tolerance;
  return a;
}

}  // namespace zostep::linesearch
