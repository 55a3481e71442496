#include "zostep/numkit/dense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zostep {

namespace {

void require_same_size(const DenseVector& a, const DenseVector& b, const char* op) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

DenseVector& DenseVector::operator+=(const DenseVector& other) {
  require_same_size(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseVector& DenseVector::operator-=(const DenseVector& other) {
  require_same_size(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseVector& DenseVector::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseVector operator+(DenseVector a, const DenseVector& b) { return a += b; }
DenseVector operator-(DenseVector a, const DenseVector& b) { return a -= b; }
DenseVector operator*(double s, DenseVector v) { return v *= s; }

DenseVector axpy(const DenseVector& a, double s, const DenseVector& b) {
  require_same_size(a, b, "axpy");
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

double norm_sq(const DenseVector& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

double norm2(const DenseVector& v) { return std::sqrt(norm_sq(v)); }

double norm1(const DenseVector& v) {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

double norm_inf(const DenseVector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sum(const DenseVector& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

bool all_finite(const DenseVector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("DenseMatrix: data length does not match rows*cols");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const DenseVector& d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("DenseMatrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(data));
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double max_abs(const DenseMatrix& m) {
  double out = 0.0;
  for (double v : m.values()) out = std::max(out, std::abs(v));
  return out;
}

double frobenius_norm(const DenseMatrix& m) {
  double acc = 0.0;
  for (double v : m.values()) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace zostep
