#include <stdexcept>
#include <string>

#include "zostep/numkit/kernels.hpp"

namespace zostep::numkit {

void check_dot_dims(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

void check_matvec_dims(const DenseMatrix& m, const DenseVector& v) {
  if (m.cols() != v.size()) {
    throw std::invalid_argument("matvec: matrix has " + std::to_string(m.cols()) +
                                " columns, vector has " + std::to_string(v.size()) + " entries");
  }
}

void check_matvec_transposed_dims(const DenseMatrix& m, const DenseVector& v) {
  if (m.rows() != v.size()) {
    throw std::invalid_argument("matvec_transposed: matrix has " + std::to_string(m.rows()) +
                                " rows, vector has " + std::to_string(v.size()) + " entries");
  }
}

namespace serial {

double dot(const DenseVector& a, const DenseVector& b) {
  check_dot_dims(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

DenseVector matvec(const DenseMatrix& m, const DenseVector& v) {
  check_matvec_dims(m, v);
  DenseVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

DenseVector matvec_transposed(const DenseMatrix& m, const DenseVector& v) {
  check_matvec_transposed_dims(m, v);
  DenseVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double vi = v[i];
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j) * vi;
  }
  return out;
}

DenseMatrix gram(const DenseMatrix& m) {
  const std::size_t n = m.cols();
  DenseMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, j) * m(i, k);
      out(j, k) = acc;
      out(k, j) = acc;
    }
  }
  return out;
}

}  // namespace serial
}  // namespace zostep::numkit
