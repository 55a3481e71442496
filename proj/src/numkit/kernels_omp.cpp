#include <algorithm>
#include <vector>

#include "zostep/numkit/kernels.hpp"

namespace zostep::numkit {

double dot(const DenseVector& a, const DenseVector& b) {
  check_dot_dims(a, b);
  const std::size_t n = a.size();
  const std::size_t blocks = (n + kDotBlock - 1) / kDotBlock;
  if (blocks <= 1) return serial::dot(a, b);

  std::vector<double> partial(blocks, 0.0);
  const double* pa = a.data();
  const double* pb = b.data();
#pragma omp parallel for schedule(static) if (n >= kParallelWork)
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const std::size_t lo = blk * kDotBlock;
    const std::size_t hi = std::min(n, lo + kDotBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += pa[i] * pb[i];
    partial[blk] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

DenseVector matvec(const DenseMatrix& m, const DenseVector& v) {
  check_matvec_dims(m, v);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  DenseVector out(rows);
  const double* pm = m.data();
  const double* pv = v.data();
  double* po = out.data();
#pragma omp parallel for schedule(static) if (rows * cols >= kParallelWork)
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = pm + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * pv[j];
    po[i] = acc;
  }
  return out;
}

DenseVector matvec_transposed(const DenseMatrix& m, const DenseVector& v) {
  check_matvec_transposed_dims(m, v);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  DenseVector out(cols);
  constexpr std::size_t kColBlock = 64;
  const std::size_t blocks = (cols + kColBlock - 1) / kColBlock;
  const double* pm = m.data();
  const double* pv = v.data();
  double* po = out.data();
  // Each thread owns a strip of output columns and walks rows in order, so
  // every entry is accumulated exactly as in the serial loop.
#pragma omp parallel for schedule(static) if (rows * cols >= kParallelWork)
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const std::size_t lo = blk * kColBlock;
    const std::size_t hi = std::min(cols, lo + kColBlock);
    for (std::size_t i = 0; i < rows; ++i) {
      const double vi = pv[i];
      const double* row = pm + i * cols;
      for (std::size_t j = lo; j < hi; ++j) po[j] += row[j] * vi;
    }
  }
  return out;
}

DenseMatrix gram(const DenseMatrix& m) {
  const std::size_t n = m.cols();
  const std::size_t rows = m.rows();
  DenseMatrix out(n, n);
  // Transposed copy keeps the inner loop contiguous; the summation order over
  // rows is unchanged.
  const DenseMatrix t = m.transposed();
#pragma omp parallel for schedule(dynamic, 4) if (rows * n * n >= kParallelWork)
  for (std::size_t j = 0; j < n; ++j) {
    const auto cj = t.row(j);
    for (std::size_t k = j; k < n; ++k) {
      const auto ck = t.row(k);
      double acc = 0.0;
      for (std::size_t i = 0; i < rows; ++i) acc += cj[i] * ck[i];
      out(j, k) = acc;
      out(k, j) = acc;
    }
  }
  return out;
}

}  // namespace zostep::numkit
