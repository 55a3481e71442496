#pragma once

#include "zostep/numkit/dense.hpp"

namespace zostep::solvers {

/// (1 + sqrt(1 + 4 beta²)) / 2
double beta_next(double beta_prev);

/// ((β_k + β_{k+1} - 1) y_next + (1 - β_k) y_cur) / β_{k+1}
DenseVector momentum_combine(const DenseVector& y_next, const DenseVector& y_cur, double beta_cur,
                             double beta_next);

/// (f_x - f_star) / grad_norm_sq
double polyak_stepsize(double f_x, double f_star, double grad_norm_sq);

/// phi(λ) <= phi(0) + c1 λ phi'(0), with relative slack 1e-12.
bool armijo_accept(double phi_0, double phi_lambda, double dphi_0, double lambda, double c1);

struct AdgdStep {
  double lambda = 0.0;
  double theta = 0.0;
};

/// min(sqrt(1 + θ) λ_prev, dx / (2 dg)); the second term is dropped when dg = 0.
AdgdStep adgd_stepsize(double lambda_prev, double theta_prev, double dx_norm, double dg_norm);

struct AdgdAccelState {
  double lambda = 1e-7;
  double theta = 0.0;
  double big_lambda = 1e7;  // inverse-stepsize estimate
  double big_theta = 0.0;
};

struct AdgdAccelStep {
  AdgdAccelState state;
  double momentum = 0.0;
};

/// One update of the accelerated adaptive rule: both local terms are dropped
/// when dx or dg vanishes.
AdgdAccelStep adgd_accel_update(const AdgdAccelState& prev, double dx_norm, double dg_norm);

/// ‖G‖∞
double stationarity_norm(const DenseVector& g);

}  // namespace zostep::solvers
