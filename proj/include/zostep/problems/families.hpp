#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "zostep/numkit/dense.hpp"

namespace zostep::problems {

enum class Family { LogReg, Quad, Lse, MaxCut, L1LeastSquares, L1Constrained, L1LogReg, Cubic };

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
bool is_composite(Family family);

struct ValueGrad {
  double value = 0.0;
  DenseVector grad;
};

// Sample rows of `a` are the feature vectors a_i.

/// (1/N) Σ log(1 + exp(-b_i a_iᵀx)) + (gamma/2)‖x‖²
struct LogisticData {
  DenseMatrix a;
  DenseVector b;
  double gamma = 0.0;
};

/// ½ xᵀBx + bᵀx
struct QuadraticData {
  DenseMatrix hessian;
  DenseVector linear;
};

/// log Σ exp(a_iᵀx - b_i) + (gamma/2)‖x‖²
struct LseData {
  DenseMatrix a;
  DenseVector b;
  double gamma = 0.0;
};

/// eps-smoothed max eigenvalue of C + diag(y), minus Σy, plus eta‖y‖²
struct MaxCutData {
  DenseMatrix c;
  double eps = 1e-5;
  double eta = 0.01;
};

/// ‖Ax - b‖²
struct LeastSquaresData {
  DenseMatrix a;
  DenseVector b;
};

/// ½ xᵀHx + gᵀx + (M/6)‖x‖³
struct CubicData {
  DenseMatrix hessian;
  DenseVector linear;
  double m = 1.0;
};

using FamilyData =
    std::variant<LogisticData, QuadraticData, LseData, MaxCutData, LeastSquaresData, CubicData>;

double logistic_value(const LogisticData& d, const DenseVector& x);
ValueGrad logistic_value_grad(const LogisticData& d, const DenseVector& x);

double quadratic_value(const QuadraticData& d, const DenseVector& x);
ValueGrad quadratic_value_grad(const QuadraticData& d, const DenseVector& x);

double lse_value(const LseData& d, const DenseVector& x);
ValueGrad lse_value_grad(const LseData& d, const DenseVector& x);

double maxcut_value(const MaxCutData& d, const DenseVector& y);
ValueGrad maxcut_value_grad(const MaxCutData& d, const DenseVector& y);

double least_squares_value(const LeastSquaresData& d, const DenseVector& x);
ValueGrad least_squares_value_grad(const LeastSquaresData& d, const DenseVector& x);

double cubic_value(const CubicData& d, const DenseVector& x);
ValueGrad cubic_value_grad(const CubicData& d, const DenseVector& x);

double value(const FamilyData& data, const DenseVector& x);
ValueGrad value_grad(const FamilyData& data, const DenseVector& x);
std::size_t dimension(const FamilyData& data);

/// log(1 + exp(t)) without overflow.
double softplus(double t);

/// 1 / (1 + exp(-t)) without overflow.
double logistic_sigmoid(double t);

}  // namespace zostep::problems
