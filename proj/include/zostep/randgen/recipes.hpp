#pragma once

#include <cstddef>

#include "zostep/numkit/dense.hpp"
#include "zostep/randgen/rng.hpp"

namespace zostep::randgen {

inline constexpr double kDefaultNoiseSd = 0.05;

DenseVector gaussian_vector(Rng& rng, std::size_t n);

/// samples × dim design with correlated columns: column 0 is i.i.d. N(0,1),
/// column j+1 = 0.5 * column j + fresh N(0,1). Entries are drawn column by
/// column, top to bottom.
DenseMatrix gen_correlated_matrix(Rng& rng, std::size_t dim, std::size_t samples);

struct RegressionTarget {
  DenseVector x_nat;  // planted coefficients, N(0,1)
  DenseVector b;      // A x_nat + noise
};

/// Draws x_nat (A.cols() normals), then A.rows() noise normals scaled by
/// noise_sd. The noise is drawn even when noise_sd is zero so the stream
/// position does not depend on it.
RegressionTarget gen_regression_target(Rng& rng, const DenseMatrix& a,
                                       double noise_sd = kDefaultNoiseSd);

/// GᵀG / ‖G‖₂² for an n×n standard Gaussian G (row-major draw order).
DenseMatrix gen_wishart_normalized(Rng& rng, std::size_t n);

/// scale * U(0,1) entries, row-major draw order.
DenseMatrix gen_uniform_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0);
DenseVector gen_uniform_vector(Rng& rng, std::size_t n, double scale = 1.0);

}  // namespace zostep::randgen
