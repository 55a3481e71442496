#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "zostep/numkit/kernels.hpp"
#include "zostep/numkit/linalg.hpp"

namespace zostep::numkit {

namespace {

DenseVector restart_vector(std::size_t n) {
  std::mt19937_64 engine(kPowerRestartSeed);
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Box–Muller on two 53-bit uniforms, same construction as randgen.
    const double u1 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    v[i] = std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * M_PI * u2);
  }
  v *= 1.0 / norm2(v);
  return v;
}

}  // namespace

SpectralNormResult spectral_norm(const DenseMatrix& m, double tol, int max_iter) {
  if (m.empty()) throw std::invalid_argument("spectral_norm: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be positive");

  const std::size_t n = m.cols();
  DenseVector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  SpectralNormResult result;
  double previous = 0.0;
  bool restarted = false;

  for (int it = 1; it <= max_iter; ++it) {
    const DenseVector w = matvec_transposed(m, matvec(m, v));
    const double rayleigh = dot(v, w);
    const double wnorm = norm2(w);
    result.iterations = it;

    if (wnorm == 0.0 || (rayleigh <= kPowerStallTol && std::abs(rayleigh - previous) < kPowerStallTol)) {
      if (!restarted && max_abs(m) > 0.0) {
        restarted = true;
        v = restart_vector(n);
        previous = 0.0;
        continue;
      }
      result.value_squared = std::max(rayleigh, 0.0);
      result.value = std::sqrt(result.value_squared);
      result.converged = true;
      return result;
    }

    result.value_squared = rayleigh;
    result.value = std::sqrt(rayleigh);
    if (it > 1 && std::abs(rayleigh - previous) <= tol * rayleigh) {
      result.converged = true;
      return result;
    }
    previous = rayleigh;
    v = (1.0 / wnorm) * w;
  }
  return result;
}

namespace {

using Wide = long double;

std::vector<Wide> wide_residual(const DenseMatrix& a, const DenseVector& rhs,
                                const std::vector<Wide>& x) {
  const std::size_t n = rhs.size();
  std::vector<Wide> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    Wide acc = rhs[i];
    for (std::size_t j = 0; j < n; ++j) acc -= static_cast<Wide>(a(i, j)) * x[j];
    r[i] = acc;
  }
  return r;
}

Wide wide_dot(const std::vector<Wide>& u, const std::vector<Wide>& v) {
  Wide acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

}  // namespace

// Runs in extended precision so residuals well below the double rounding floor
// of ill-conditioned systems are reachable; restarts from the true residual
// every cycle.
CgResult conjugate_gradient(const DenseMatrix& a, const DenseVector& rhs, double tol,
                            int max_iter) {
  if (!a.is_square() || a.rows() != rhs.size()) {
    throw std::invalid_argument("conjugate_gradient: dimension mismatch");
  }
  const std::size_t n = rhs.size();
  CgResult out;
  out.x = DenseVector(n);
  const Wide rhs_norm = std::sqrt(static_cast<Wide>(norm_sq(rhs)));
  if (rhs_norm == 0) {
    out.converged = true;
    return out;
  }
  const int cycle = static_cast<int>(2 * n + 10);
  std::vector<Wide> x(n, 0), ap(n);
  int it = 0;
  while (it < max_iter) {
    std::vector<Wide> r = wide_residual(a, rhs, x);
    Wide rr = wide_dot(r, r);
    out.relative_residual = static_cast<double>(std::sqrt(rr) / rhs_norm);
    if (out.relative_residual <= tol) {
      out.converged = true;
      break;
    }
    std::vector<Wide> p = r;
    for (int c = 0; c < cycle && it < max_iter; ++c, ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        Wide acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += static_cast<Wide>(a(i, j)) * p[j];
        ap[i] = acc;
      }
      const Wide pap = wide_dot(p, ap);
      if (!(pap > 0)) {
        it = max_iter;
        break;
      }
      const Wide alpha = rr / pap;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      const Wide rr_next = wide_dot(r, r);
      if (std::sqrt(rr_next) <= 0.1L * tol * rhs_norm) {
        ++it;
        break;
      }
      const Wide beta = rr_next / rr;
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
      rr = rr_next;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.x[i] = static_cast<double>(x[i]);
  const std::vector<Wide> r = wide_residual(a, rhs, x);
  out.relative_residual = static_cast<double>(std::sqrt(wide_dot(r, r)) / rhs_norm);
  out.converged = out.relative_residual <= tol;
  out.iterations = it;
  return out;
}

}  // namespace zostep::numkit
