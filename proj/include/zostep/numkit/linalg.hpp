#pragma once

#include <cstdint>

#include "zostep/numkit/dense.hpp"

namespace zostep::numkit {

// Fixed solver constants. They are compiled in so that traces reproduce.
inline constexpr double kJacobiOffDiagonalTol = 1e-12;  // relative to ‖S‖_F
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kPowerStallTol = 1e-16;
inline constexpr std::uint64_t kPowerRestartSeed = 0x5eedULL;
inline constexpr double kDefaultSpectralTol = 1e-13;
inline constexpr int kDefaultSpectralMaxIter = 20000;

struct SpectralNormResult {
  double value = 0.0;
  double value_squared = 0.0;  // Rayleigh quotient of MᵀM, i.e. value²
  bool converged = false;
  int iterations = 0;
};

/// Largest singular value of `m` by power iteration on MᵀM.
///
/// The start vector is the normalized all-ones vector. If the iteration stalls
/// at a zero Rayleigh quotient (start vector in the null space of M) it
/// restarts once from a Gaussian vector drawn with kPowerRestartSeed. When
/// max_iter is exhausted the best estimate is returned with converged = false.
SpectralNormResult spectral_norm(const DenseMatrix& m, double tol = kDefaultSpectralTol,
                                 int max_iter = kDefaultSpectralMaxIter);

struct EigDecomposition {
  DenseVector eigenvalues;  // descending
  DenseMatrix vectors;      // column i pairs with eigenvalues[i]
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. The input is
/// symmetrized as (S + Sᵀ)/2 first. Throws std::invalid_argument for
/// non-square or visibly non-symmetric input, std::runtime_error if the sweep
/// limit is reached.
EigDecomposition jacobi_eig(const DenseMatrix& s);

/// Same rotations as jacobi_eig without accumulating eigenvectors.
DenseVector jacobi_eigenvalues(const DenseMatrix& s);

struct CgResult {
  DenseVector x;
  double relative_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Conjugate gradients for A x = rhs with A symmetric positive (semi)definite.
/// Iterates in extended precision; relative_residual is that of the extended
/// iterate before it is rounded into x.
CgResult conjugate_gradient(const DenseMatrix& a, const DenseVector& rhs, double tol,
                            int max_iter);

}  // namespace zostep::numkit
