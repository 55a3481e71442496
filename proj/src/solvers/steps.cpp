#include "zostep/solvers/steps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zostep::solvers {

double beta_next(double beta_prev) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * beta_prev * beta_prev)); }

DenseVector momentum_combine(const DenseVector& y_next, const DenseVector& y_cur, double beta_cur,
                             double beta_next) {
  if (!(beta_next > 0.0)) throw std::invalid_argument("momentum_combine: beta_next must be positive");
  if (y_next.size() != y_cur.size()) throw std::invalid_argument("momentum_combine: size mismatch");
  const double a = (beta_cur + beta_next - 1.0) / beta_next;
  const double b = (1.0 - beta_cur) / beta_next;
  DenseVector out(y_next.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * y_next[i] + b * y_cur[i];
  return out;
}

double polyak_stepsize(double f_x, double f_star, double grad_norm_sq) {
  if (!(grad_norm_sq > 0.0)) throw std::invalid_argument("polyak_stepsize: zero gradient");
  return (f_x - f_star) / grad_norm_sq;
}

bool armijo_accept(double phi_0, double phi_lambda, double dphi_0, double lambda, double c1) {
  if (!std::isfinite(phi_lambda)) return false;
  return phi_lambda <= phi_0 + c1 * lambda * dphi_0 + 1e-12 * std::max(1.0, std::abs(phi_0));
}

AdgdStep adgd_stepsize(double lambda_prev, double theta_prev, double dx_norm, double dg_norm) {
  double lambda = std::sqrt(1.0 + theta_prev) * lambda_prev;
  if (dg_norm > 0.0) lambda = std::min(lambda, dx_norm / (2.0 * dg_norm));
  return {lambda, lambda / lambda_prev};
}

AdgdAccelStep adgd_accel_update(const AdgdAccelState& prev, double dx_norm, double dg_norm) {
  AdgdAccelStep out;
  double lambda = std::sqrt(1.0 + 0.5 * prev.theta) * prev.lambda;
  double big = std::sqrt(1.0 + 0.5 * prev.big_theta) * prev.big_lambda;
  if (dx_norm > 0.0 && dg_norm > 0.0) {
    lambda = std::min(lambda, dx_norm / (2.0 * dg_norm));
    big = std::min(big, dg_norm / (2.0 * dx_norm));
  }
  out.state.lambda = lambda;
  out.state.theta = lambda / prev.lambda;
  out.state.big_lambda = big;
  out.state.big_theta = big / prev.big_lambda;
  const double a = std::sqrt(1.0 / lambda);
  const double b = std::sqrt(big);
  out.momentum = (a - b) / (a + b);
  return out;
}

double stationarity_norm(const DenseVector& g) { return norm_inf(g); }

}  // namespace zostep::solvers
