#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "zostep/numkit/linalg.hpp"

namespace zostep::numkit {

namespace {

DenseMatrix symmetrized(const DenseMatrix& s) {
  if (!s.is_square()) throw std::invalid_argument("jacobi_eig: matrix is not square");
  const std::size_t n = s.rows();
  const double scale = std::max(1.0, max_abs(s));
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(s(i, j) - s(j, i)) > kSymmetryTol * scale) {
        throw std::invalid_argument("jacobi_eig: matrix is not symmetric");
      }
      a(i, j) = 0.5 * (s(i, j) + s(j, i));
    }
  }
  return a;
}

double off_diagonal_mass(const DenseMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) acc += a(i, j) * a(i, j);
  return std::sqrt(2.0 * acc);
}

// Runs cyclic sweeps in place. `v` is null when eigenvectors are not wanted.
int run_sweeps(DenseMatrix& a, DenseMatrix* v) {
  const std::size_t n = a.rows();
  const double target = kJacobiOffDiagonalTol * frobenius_norm(a);
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= target) return sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          const double new_kp = c * akp - s * akq;
          const double new_kq = s * akp + c * akq;
          a(k, p) = new_kp;
          a(p, k) = new_kp;
          a(k, q) = new_kq;
          a(q, k) = new_kq;
        }
        if (v != nullptr) {
          DenseMatrix& vm = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = vm(k, p);
            const double vkq = vm(k, q);
            vm(k, p) = c * vkp - s * vkq;
            vm(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (off_diagonal_mass(a) <= target) return kJacobiMaxSweeps;
  throw std::runtime_error("jacobi_eig: no convergence within sweep limit");
}

std::vector<std::size_t> descending_order(const DenseMatrix& a) {
  std::vector<std::size_t> order(a.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  return order;
}

}  // namespace

EigDecomposition jacobi_eig(const DenseMatrix& s) {
  DenseMatrix a = symmetrized(s);
  const std::size_t n = a.rows();
  DenseMatrix v = DenseMatrix::identity(n);
  const int sweeps = run_sweeps(a, &v);

  const auto order = descending_order(a);
  EigDecomposition out;
  out.sweeps = sweeps;
  out.eigenvalues = DenseVector(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[i], order[i]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

DenseVector jacobi_eigenvalues(const DenseMatrix& s) {
  DenseMatrix a = symmetrized(s);
  run_sweeps(a, nullptr);
  const auto order = descending_order(a);
  DenseVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = a(order[i], order[i]);
  return out;
}

}  // namespace zostep::numkit
