#include "zostep/problems/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "zostep/numkit/kernels.hpp"
#include "zostep/numkit/linalg.hpp"

namespace zostep::problems {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 8> kFamilyNames{{
    {Family::LogReg, "logreg"},
    {Family::Quad, "quad"},
    {Family::Lse, "lse"},
    {Family::MaxCut, "maxcut"},
    {Family::L1LeastSquares, "l1ls"},
    {Family::L1Constrained, "l1constr"},
    {Family::L1LogReg, "l1logreg"},
    {Family::Cubic, "cubic"},
}};

void require_dim(std::size_t expected, const DenseVector& x, const char* who) {
  if (x.size() != expected) {
    throw std::invalid_argument(std::string(who) + ": point has " + std::to_string(x.size()) +
                                " entries, expected " + std::to_string(expected));
  }
}

// Returns the logistic margins z_i = b_i a_iᵀx.
DenseVector margins(const LogisticData& d, const DenseVector& x) {
  DenseVector z = numkit::matvec(d.a, x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= d.b[i];
  return z;
}

struct LseTerms {
  double shift = 0.0;
  double log_sum = 0.0;
  DenseVector t;  // Ax - b
};

LseTerms lse_terms(const LseData& d, const DenseVector& x) {
  LseTerms out;
  out.t = numkit::matvec(d.a, x) - d.b;
  out.shift = *std::max_element(out.t.begin(), out.t.end());
  double s = 0.0;
  for (double v : out.t) s += std::exp(v - out.shift);
  out.log_sum = std::log(s);
  return out;
}

DenseMatrix shifted_matrix(const MaxCutData& d, const DenseVector& y) {
  if (!d.c.is_square() || d.c.rows() != y.size()) {
    throw std::invalid_argument("maxcut: y has wrong dimension");
  }
  DenseMatrix x = d.c;
  for (std::size_t i = 0; i < y.size(); ++i) x(i, i) += y[i];
  return x;
}

// eps * log Σ exp(λ_i/eps), shifted by the top eigenvalue.
double smoothed_max(const DenseVector& eig, double eps) {
  const double top = eig[0];
  double s = 0.0;
  for (double l : eig) s += std::exp((l - top) / eps);
  return top + eps * std::log(s);
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames)
    if (n == name) return f;
  return std::nullopt;
}

bool is_composite(Family family) {
  return family == Family::L1LeastSquares || family == Family::L1Constrained ||
         family == Family::L1LogReg;
}

double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double logistic_sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double logistic_value(const LogisticData& d, const DenseVector& x) {
  require_dim(d.a.cols(), x, "logistic");
  const DenseVector z = margins(d, x);
  double loss = 0.0;
  for (double zi : z) loss += softplus(-zi);
  return loss / static_cast<double>(z.size()) + 0.5 * d.gamma * norm_sq(x);
}

ValueGrad logistic_value_grad(const LogisticData& d, const DenseVector& x) {
  require_dim(d.a.cols(), x, "logistic");
  const DenseVector z = margins(d, x);
  const double inv_n = 1.0 / static_cast<double>(z.size());
  DenseVector w(z.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    loss += softplus(-z[i]);
    w[i] = -d.b[i] * logistic_sigmoid(-z[i]) * inv_n;
  }
  ValueGrad out;
  out.value = loss * inv_n + 0.5 * d.gamma * norm_sq(x);
  out.grad = axpy(numkit::matvec_transposed(d.a, w), d.gamma, x);
  return out;
}

double quadratic_value(const QuadraticData& d, const DenseVector& x) {
  require_dim(d.hessian.cols(), x, "quadratic");
  return 0.5 * numkit::dot(x, numkit::matvec(d.hessian, x)) + numkit::dot(d.linear, x);
}

ValueGrad quadratic_value_grad(const QuadraticData& d, const DenseVector& x) {
  require_dim(d.hessian.cols(), x, "quadratic");
  const DenseVector bx = numkit::matvec(d.hessian, x);
  ValueGrad out;
  out.value = 0.5 * numkit::dot(x, bx) + numkit::dot(d.linear, x);
  out.grad = bx + d.linear;
  return out;
}

double lse_value(const LseData& d, const DenseVector& x) {
  require_dim(d.a.cols(), x, "lse");
  const LseTerms t = lse_terms(d, x);
  return t.shift + t.log_sum + 0.5 * d.gamma * norm_sq(x);
}

ValueGrad lse_value_grad(const LseData& d, const DenseVector& x) {
  require_dim(d.a.cols(), x, "lse");
  const LseTerms t = lse_terms(d, x);
  DenseVector w(t.t.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(t.t[i] - t.shift - t.log_sum);
  ValueGrad out;
  out.value = t.shift + t.log_sum + 0.5 * d.gamma * norm_sq(x);
  out.grad = axpy(numkit::matvec_transposed(d.a, w), d.gamma, x);
  return out;
}

double maxcut_value(const MaxCutData& d, const DenseVector& y) {
  const DenseVector eig = numkit::jacobi_eigenvalues(shifted_matrix(d, y));
  return smoothed_max(eig, d.eps) - sum(y) + d.eta * norm_sq(y);
}

ValueGrad maxcut_value_grad(const MaxCutData& d, const DenseVector& y) {
  const numkit::EigDecomposition eig = numkit::jacobi_eig(shifted_matrix(d, y));
  const std::size_t n = y.size();
  const double top = eig.eigenvalues[0];
  DenseVector w(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp((eig.eigenvalues[i] - top) / d.eps);
    s += w[i];
  }
  w *= 1.0 / s;

  ValueGrad out;
  out.value = top + d.eps * std::log(s) - sum(y) + d.eta * norm_sq(y);
  out.grad = DenseVector(n);
  // diag(Σ_i w_i q_i q_iᵀ)_j = Σ_i w_i Q_ji²
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * eig.vectors(j, i) * eig.vectors(j, i);
    out.grad[j] = acc - 1.0 + 2.0 * d.eta * y[j];
  }
  return out;
}

double least_squares_value(const LeastSquaresData& d, const DenseVector& x) {
  require_dim(d.a.cols(), x, "least_squares");
  return norm_sq(numkit::matvec(d.a, x) - d.b);
}

ValueGrad least_squares_value_grad(const LeastSquaresData& d, const DenseVector& x) {
  require_dim(d.a.cols(), x, "least_squares");
  const DenseVector r = numkit::matvec(d.a, x) - d.b;
  ValueGrad out;
  out.value = norm_sq(r);
  out.grad = 2.0 * numkit::matvec_transposed(d.a, r);
  return out;
}

double cubic_value(const CubicData& d, const DenseVector& x) {
  require_dim(d.hessian.cols(), x, "cubic");
  const double nx = norm2(x);
  return 0.5 * numkit::dot(x, numkit::matvec(d.hessian, x)) + numkit::dot(d.linear, x) +
         d.m / 6.0 * nx * nx * nx;
}

ValueGrad cubic_value_grad(const CubicData& d, const DenseVector& x) {
  require_dim(d.hessian.cols(), x, "cubic");
  const DenseVector hx = numkit::matvec(d.hessian, x);
  const double nx = norm2(x);
  ValueGrad out;
  out.value = 0.5 * numkit::dot(x, hx) + numkit::dot(d.linear, x) + d.m / 6.0 * nx * nx * nx;
  out.grad = axpy(hx + d.linear, 0.5 * d.m * nx, x);
  return out;
}

double value(const FamilyData& data, const DenseVector& x) {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, LogisticData>) return logistic_value(d, x);
        else if constexpr (std::is_same_v<T, QuadraticData>) return quadratic_value(d, x);
        else if constexpr (std::is_same_v<T, LseData>) return lse_value(d, x);
        else if constexpr (std::is_same_v<T, MaxCutData>) return maxcut_value(d, x);
        else if constexpr (std::is_same_v<T, LeastSquaresData>) return least_squares_value(d, x);
        else return cubic_value(d, x);
      },
      data);
}

ValueGrad value_grad(const FamilyData& data, const DenseVector& x) {
  return std::visit(
      [&](const auto& d) -> ValueGrad {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, LogisticData>) return logistic_value_grad(d, x);
        else if constexpr (std::is_same_v<T, QuadraticData>) return quadratic_value_grad(d, x);
        else if constexpr (std::is_same_v<T, LseData>) return lse_value_grad(d, x);
        else if constexpr (std::is_same_v<T, MaxCutData>) return maxcut_value_grad(d, x);
        else if constexpr (std::is_same_v<T, LeastSquaresData>) return least_squares_value_grad(d, x);
        else return cubic_value_grad(d, x);
      },
      data);
}

std::size_t dimension(const FamilyData& data) {
  return std::visit(
      [](const auto& d) -> std::size_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MaxCutData>) return d.c.rows();
        else if constexpr (std::is_same_v<T, QuadraticData> || std::is_same_v<T, CubicData>)
          return d.hessian.cols();
        else return d.a.cols();
      },
      data);
}

}  // namespace zostep::problems
