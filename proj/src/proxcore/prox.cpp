#include "zostep/proxcore/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace zostep::prox {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("prox: stepsize must be positive");
}

}  // namespace

ProxTerm make_l1(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("L1 term requires gamma > 0");
  return L1Term{gamma};
}

ProxTerm make_l1_ball(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("L1 ball requires radius > 0");
  return L1BallTerm{radius};
}

bool is_zero(const ProxTerm& term) { return std::holds_alternative<ZeroTerm>(term); }

std::string describe(const ProxTerm& term) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{[&](const ZeroTerm&) { os << "zero"; },
                        [&](const L1Term& t) { os << "l1 " << t.gamma; },
                        [&](const L1BallTerm& t) { os << "l1ball " << t.radius; }},
             term);
  return os.str();
}

double h_value(const ProxTerm& term, const DenseVector& x) {
  return std::visit(overloaded{[](const ZeroTerm&) { return 0.0; },
                               [&](const L1Term& t) { return t.gamma * norm1(x); },
                               [&](const L1BallTerm& t) {
                                 const double slack = kBallSlack * std::max(1.0, t.radius);
                                 return norm1(x) <= t.radius + slack
                                            ? 0.0
                                            : std::numeric_limits<double>::infinity();
                               }},
                    term);
}

DenseVector prox_l1(const DenseVector& x, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("prox_l1: threshold must be non-negative");
  DenseVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - t;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
  return out;
}

DenseVector project_l1_ball(const DenseVector& x, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("project_l1_ball: radius must be positive");
  if (norm1(x) <= r) return x;

  std::vector<double> mags(x.size());
  std::transform(x.begin(), x.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());

  // theta = (sum of the rho largest magnitudes - r) / rho for the largest rho
  // whose magnitude still exceeds the running threshold.
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cumulative += mags[j];
    const double candidate = (cumulative - r) / static_cast<double>(j + 1);
    if (mags[j] > candidate) theta = candidate;
  }

  DenseVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - theta;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
  return out;
}

DenseVector apply_prox(const ProxTerm& term, const DenseVector& x, double lambda) {
  require_positive_lambda(lambda);
  return std::visit(overloaded{[&](const ZeroTerm&) { return x; },
                               [&](const L1Term& t) { return prox_l1(x, lambda * t.gamma); },
                               [&](const L1BallTerm& t) { return project_l1_ball(x, t.radius); }},
                    term);
}

ProxOperator prox_operator(const ProxTerm& term) {
  return [term](const DenseVector& x, double lambda) { return apply_prox(term, x, lambda); };
}

GradMapResult gradient_mapping(const DenseVector& f_grad, const DenseVector& x, double lambda,
                               const ProxTerm& term) {
  require_positive_lambda(lambda);
  if (f_grad.size() != x.size()) throw std::invalid_argument("gradient_mapping: dimension mismatch");
  // γ = 0 is h ≡ 0; the generic path would lose digits in (x - p) / λ.
  const auto* l1 = std::get_if<L1Term>(&term);
  if (is_zero(term) || (l1 && l1->gamma == 0.0)) {
    GradMapResult out;
    out.G = f_grad;
    out.x_plus = axpy(x, -lambda, out.G);
    out.prox_count = 1;
    return out;
  }
  return gradient_mapping(f_grad, x, lambda, prox_operator(term));
}

GradMapResult gradient_mapping(const DenseVector& f_grad, const DenseVector& x, double lambda,
                               const ProxOperator& prox) {
  require_positive_lambda(lambda);
  if (f_grad.size() != x.size()) throw std::invalid_argument("gradient_mapping: dimension mismatch");
  const DenseVector p = prox(axpy(x, -lambda, f_grad), lambda);
  GradMapResult out;
  out.G = DenseVector(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.G[i] = (x[i] - p[i]) / lambda;
  out.x_plus = axpy(x, -lambda, out.G);
  out.prox_count = 1;
  return out;
}

}  // namespace zostep::prox
