#include "zostep/randgen/recipes.hpp"

#include <stdexcept>

#include "zostep/numkit/kernels.hpp"
#include "zostep/numkit/linalg.hpp"

namespace zostep::randgen {

DenseVector gaussian_vector(Rng& rng, std::size_t n) {
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_gaussian();
  return v;
}

DenseMatrix gen_correlated_matrix(Rng& rng, std::size_t dim, std::size_t samples) {
  if (dim == 0 || samples == 0) throw std::invalid_argument("gen_correlated_matrix: empty shape");
  DenseMatrix a(samples, dim);
  for (std::size_t i = 0; i < samples; ++i) a(i, 0) = rng.next_gaussian();
  for (std::size_t j = 1; j < dim; ++j) {
    for (std::size_t i = 0; i < samples; ++i) a(i, j) = 0.5 * a(i, j - 1) + rng.next_gaussian();
  }
  return a;
}

RegressionTarget gen_regression_target(Rng& rng, const DenseMatrix& a, double noise_sd) {
  if (a.empty()) throw std::invalid_argument("gen_regression_target: empty design");
  RegressionTarget out;
  out.x_nat = gaussian_vector(rng, a.cols());
  out.b = numkit::matvec(a, out.x_nat);
  for (std::size_t i = 0; i < a.rows(); ++i) out.b[i] += noise_sd * rng.next_gaussian();
  return out;
}

DenseMatrix gen_wishart_normalized(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("gen_wishart_normalized: n must be positive");
  DenseMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_gaussian();
  DenseMatrix c = numkit::gram(g);
  const double sigma_sq = numkit::spectral_norm(g).value_squared;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) /= sigma_sq;
  return c;
}

DenseMatrix gen_uniform_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = scale * rng.next_uniform();
  return m;
}

DenseVector gen_uniform_vector(Rng& rng, std::size_t n, double scale) {
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scale * rng.next_uniform();
  return v;
}

}  // namespace zostep::randgen
