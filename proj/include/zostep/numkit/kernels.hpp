#pragma once

#include "zostep/numkit/dense.hpp"

// Dense kernels used by every oracle evaluation.
//
// The functions in zostep::numkit are the OpenMP versions. The ones in
// zostep::numkit::serial are plain loops kept as the reference
// implementation for tests and the benchmark. The parallel versions are
// bit-reproducible for any thread count: matvec, matvec_transposed and gram
// accumulate every output entry in the same order as the serial loops, and
// dot sums fixed-size blocks sequentially before combining block partials in
// index order.

namespace zostep::numkit {

/// Problems at or above this many multiply-adds run multithreaded.
inline constexpr std::size_t kParallelWork = std::size_t{1} << 15;

/// Block length of the reproducible dot-product reduction.
inline constexpr std::size_t kDotBlock = 1024;

double dot(const DenseVector& a, const DenseVector& b);

/// M v
DenseVector matvec(const DenseMatrix& m, const DenseVector& v);

/// Mᵀ v
DenseVector matvec_transposed(const DenseMatrix& m, const DenseVector& v);

/// MᵀM
DenseMatrix gram(const DenseMatrix& m);

namespace serial {

double dot(const DenseVector& a, const DenseVector& b);
DenseVector matvec(const DenseMatrix& m, const DenseVector& v);
DenseVector matvec_transposed(const DenseMatrix& m, const DenseVector& v);
DenseMatrix gram(const DenseMatrix& m);

}  // namespace serial

void check_dot_dims(const DenseVector& a, const DenseVector& b);
void check_matvec_dims(const DenseMatrix& m, const DenseVector& v);
void check_matvec_transposed_dims(const DenseMatrix& m, const DenseVector& v);

}  // namespace zostep::numkit
