#include "zostep/solvers/solve.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "zostep/numkit/kernels.hpp"
#include "zostep/solvers/steps.hpp"

namespace zostep::solvers {

namespace {

using problems::CompositeProblem;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<std::pair<SolverKind, std::string_view>, 10> kSolverNames{{
    {SolverKind::Alg1, "alg1"},
    {SolverKind::Alg2, "alg2"},
    {SolverKind::GD, "gd"},
    {SolverKind::NAGD, "nagd"},
    {SolverKind::PolyakGD, "polyak"},
    {SolverKind::ArmijoGD, "armijo"},
    {SolverKind::AdGD, "adgd"},
    {SolverKind::AdGDAccel, "adgd-accel"},
    {SolverKind::ISTA, "ista"},
    {SolverKind::FISTA, "fista"},
}};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shared bookkeeping for every method: records, counters, clock, stopping.
class Run {
 public:
  Run(SolverKind kind, CompositeProblem& problem, const SolverOptions& opts, const Observer& obs)
      : p_(problem), opts_(opts), obs_(obs), start_(std::chrono::steady_clock::now()) {
    trace_.set_meta("solver", std::string(solver_name(kind)));
    trace_.set_meta("max_iter", std::to_string(opts.max_iter));
    trace_.set_meta("tol", num(opts.tol));
  }

  CompositeProblem& problem() { return p_; }
  const SolverOptions& opts() const { return opts_; }
  Trace& trace() { return trace_; }

  void add_prox(long n) { prox_ += n; }

  // Appends a record; returns false (and marks divergence) on a non-finite value.
  bool record(long iter, double f_value, double stepsize) {
    if (!std::isfinite(f_value)) {
      trace_.termination = Termination::Diverged;
      trace_.message = "non-finite objective at iteration " + std::to_string(iter);
      return false;
    }
    IterRecord r;
    r.iter = iter;
    r.f_value = f_value;
    if (p_.f_star) r.gap = f_value - *p_.f_star;
    r.stepsize = stepsize;
    r.grad_evals = p_.smooth.grad_count();
    r.f_evals = p_.smooth.eval_count();
    r.prox_evals = prox_;
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    trace_.records.push_back(r);
    return true;
  }

  // True when the stationarity test fires; sets the termination state.
  bool converged(const DenseVector& g) {
    trace_.final_stationarity = stationarity_norm(g);
    if (!std::isfinite(trace_.final_stationarity)) {
      trace_.termination = Termination::Diverged;
      trace_.message = "non-finite gradient";
      return true;
    }
    if (trace_.final_stationarity <= opts_.tol) {
      trace_.termination = Termination::Converged;
      return true;
    }
    return false;
  }

  void notify(const IterationView& v) const {
    if (obs_) obs_(v);
  }

  double L() const { return opts_.L_override.value_or(p_.L_safe); }

 private:
  CompositeProblem& p_;
  const SolverOptions& opts_;
  const Observer& obs_;
  Trace trace_;
  long prox_ = 0;
  std::chrono::steady_clock::time_point start_;
};

// Squared norm of the quantity whose improvement the warm start is matched to:
// ∇f for smooth problems, the gradient mapping at the previous stepsize otherwise.
double warm_norm_sq(Run& run, const DenseVector& x, const DenseVector& grad, double lambda_prev) {
  CompositeProblem& p = run.problem();
  if (p.smooth_only()) return norm_sq(grad);
  const prox::GradMapResult gm = prox::gradient_mapping(grad, x, lambda_prev, p.prox_term);
  run.add_prox(gm.prox_count);
  return norm_sq(gm.G);
}

void run_alg1(Run& run, DenseVector x) {
  CompositeProblem& p = run.problem();
  const auto& ls = run.opts().ls;
  problems::ValueGrad vg = p.smooth.value_grad(x);
  double F_cur = vg.value + prox::h_value(p.prox_term, x);
  double F_prev = kNaN;
  double lambda_prev = ls.lambda_init;
  if (!run.record(0, F_cur, 0.0)) return;
  DenseVector grad = std::move(vg.grad);

  for (long k = 0; k < run.opts().max_iter; ++k) {
    if (k > 0) grad = p.smooth.gradient(x);
    double start = ls.lambda_init;
    if (k > 0) {
      start = linesearch::warm_start_lambda(F_prev, F_cur, warm_norm_sq(run, x, grad, lambda_prev),
                                            lambda_prev);
    }
    linesearch::LinesearchOutcome out;
    try {
      out = linesearch::backtrack(p, x, grad, start, ls);
    } catch (const linesearch::LinesearchError& e) {
      run.trace().termination = Termination::LinesearchFail;
      run.trace().message = "iteration " + std::to_string(k) + ": " + e.what();
      break;
    }
    run.add_prox(out.prox_evals);
    if (run.converged(out.G)) break;

    const double F_next = out.phi_lambda + prox::h_value(p.prox_term, out.x_plus);
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &grad;
    v.G = &out.G;
    v.x_next = &out.x_plus;
    v.lambda = out.lambda;
    v.F_x = F_cur;
    v.F_next = F_next;
    run.notify(v);

    x = std::move(out.x_plus);
    F_prev = F_cur;
    F_cur = F_next;
    lambda_prev = out.lambda;
    if (!run.record(k + 1, F_cur, out.lambda)) break;
  }
  run.trace().x_final = std::move(x);
}

void run_alg2(Run& run, DenseVector x) {
  CompositeProblem& p = run.problem();
  const auto& ls = run.opts().ls;
  // β₀ = 0 so β₁ = 1; x₁ = y₁ = x0 and λ₀ = lambda_init caps the first search.
  double beta = beta_next(0.0);
  DenseVector y = x;
  problems::ValueGrad vg = p.smooth.value_grad(x);
  double F_y = vg.value + prox::h_value(p.prox_term, y);
  double F_y_prev = kNaN;
  double lambda_prev = ls.lambda_init;
  if (!run.record(0, F_y, 0.0)) return;
  DenseVector grad = std::move(vg.grad);

  for (long k = 0; k < run.opts().max_iter; ++k) {
    if (k > 0) grad = p.smooth.gradient(x);
    double start = lambda_prev;
    if (k > 0 && run.opts().alg2_warm_start) {
      const double warm = linesearch::warm_start_lambda(
          F_y_prev, F_y, warm_norm_sq(run, x, grad, lambda_prev), lambda_prev);
      start = std::min(lambda_prev, warm);
    }
    linesearch::LinesearchOutcome out;
    try {
      out = linesearch::backtrack(p, x, grad, start, ls);
    } catch (const linesearch::LinesearchError& e) {
      run.trace().termination = Termination::LinesearchFail;
      run.trace().message = "iteration " + std::to_string(k) + ": " + e.what();
      break;
    }
    run.add_prox(out.prox_evals);
    if (run.converged(out.G)) break;

    const double beta_n = beta_next(beta);
    DenseVector x_next = momentum_combine(out.x_plus, y, beta, beta_n);
    const double F_next = out.phi_lambda + prox::h_value(p.prox_term, out.x_plus);
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &grad;
    v.G = &out.G;
    v.x_next = &x_next;
    v.y_next = &out.x_plus;
    v.y_cur = &y;
    v.lambda = out.lambda;
    v.F_x = kNaN;
    v.F_next = F_next;
    v.beta_cur = beta;
    v.beta_next = beta_n;
    run.notify(v);

    y = std::move(out.x_plus);
    x = std::move(x_next);
    beta = beta_n;
    lambda_prev = out.lambda;
    F_y_prev = F_y;
    F_y = F_next;
    if (!run.record(k + 1, F_y, out.lambda)) break;
  }
  run.trace().x_final = std::move(y);
}

// GD and ISTA: x⁺ = prox_{h/L}(x - ∇f(x)/L). GD skips the prox count.
void run_constant(Run& run, DenseVector x, bool use_prox) {
  CompositeProblem& p = run.problem();
  const double lambda = 1.0 / run.L();
  run.trace().set_meta("L_used", num(run.L()));
  if (!run.record(0, objective_uncounted(p, x), 0.0)) return;
  for (long k = 0; k < run.opts().max_iter; ++k) {
    const DenseVector grad = p.smooth.gradient(x);
    prox::GradMapResult gm;
    if (use_prox) {
      gm = prox::gradient_mapping(grad, x, lambda, p.prox_term);
      run.add_prox(gm.prox_count);
    } else {
      gm.G = grad;
      gm.x_plus = axpy(x, -lambda, grad);
    }
    if (run.converged(gm.G)) break;
    const double F_next = objective_uncounted(p, gm.x_plus);
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &grad;
    v.G = &gm.G;
    v.x_next = &gm.x_plus;
    v.lambda = lambda;
    v.F_x = kNaN;
    v.F_next = F_next;
    run.notify(v);
    x = std::move(gm.x_plus);
    if (!run.record(k + 1, F_next, lambda)) break;
  }
  run.trace().x_final = std::move(x);
}

// NAGD and FISTA in two-sequence form with constant 1/L and the β recursion.
void run_constant_accel(Run& run, DenseVector x, bool use_prox) {
  CompositeProblem& p = run.problem();
  const double lambda = 1.0 / run.L();
  run.trace().set_meta("L_used", num(run.L()));
  double beta = beta_next(0.0);
  DenseVector y = x;
  if (!run.record(0, objective_uncounted(p, x), 0.0)) return;
  for (long k = 0; k < run.opts().max_iter; ++k) {
    const DenseVector grad = p.smooth.gradient(x);
    prox::GradMapResult gm;
    if (use_prox) {
      gm = prox::gradient_mapping(grad, x, lambda, p.prox_term);
      run.add_prox(gm.prox_count);
    } else {
      gm.G = grad;
      gm.x_plus = axpy(x, -lambda, grad);
    }
    if (run.converged(gm.G)) break;
    const double beta_n = beta_next(beta);
    DenseVector x_next = momentum_combine(gm.x_plus, y, beta, beta_n);
    const double F_next = objective_uncounted(p, gm.x_plus);
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &grad;
    v.G = &gm.G;
    v.x_next = &x_next;
    v.y_next = &gm.x_plus;
    v.y_cur = &y;
    v.lambda = lambda;
    v.F_x = kNaN;
    v.F_next = F_next;
    v.beta_cur = beta;
    v.beta_next = beta_n;
    run.notify(v);
    y = std::move(gm.x_plus);
    x = std::move(x_next);
    beta = beta_n;
    if (!run.record(k + 1, F_next, lambda)) break;
  }
  run.trace().x_final = std::move(y);
}

void run_polyak(Run& run, DenseVector x) {
  CompositeProblem& p = run.problem();
  const double f_star = *run.opts().f_star_hint;
  run.trace().set_meta("f_star_hint", num(f_star));
  if (!run.record(0, objective_uncounted(p, x), 0.0)) return;
  for (long k = 0; k < run.opts().max_iter; ++k) {
    problems::ValueGrad vg = p.smooth.value_grad(x);
    if (run.converged(vg.grad)) break;
    const double lambda = polyak_stepsize(vg.value, f_star, norm_sq(vg.grad));
    if (!(lambda > 0.0)) {
      run.trace().termination = Termination::Converged;
      run.trace().message = "objective reached the optimum hint";
      break;
    }
    DenseVector x_next = axpy(x, -lambda, vg.grad);
    const double F_next = objective_uncounted(p, x_next);
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &vg.grad;
    v.G = &vg.grad;
    v.x_next = &x_next;
    v.lambda = lambda;
    v.F_x = vg.value;
    v.F_next = F_next;
    run.notify(v);
    x = std::move(x_next);
    if (!run.record(k + 1, F_next, lambda)) break;
  }
  run.trace().x_final = std::move(x);
}

void run_armijo(Run& run, DenseVector x) {
  CompositeProblem& p = run.problem();
  const auto& ls = run.opts().ls;
  run.trace().set_meta("c1", num(run.opts().c1));
  if (!run.record(0, objective_uncounted(p, x), 0.0)) return;
  for (long k = 0; k < run.opts().max_iter; ++k) {
    problems::ValueGrad vg = p.smooth.value_grad(x);
    if (run.converged(vg.grad)) break;
    const double slope = -norm_sq(vg.grad);
    double lambda = ls.lambda_init;
    bool accepted = false;
    DenseVector x_next;
    double phi = kNaN;
    for (int i = 0; i <= ls.max_backtracks; ++i) {
      x_next = axpy(x, -lambda, vg.grad);
      phi = p.smooth.value(x_next);
      if (armijo_accept(vg.value, phi, slope, lambda, run.opts().c1)) {
        accepted = true;
        break;
      }
      lambda *= ls.factor;
    }
    if (!accepted) {
      run.trace().termination = Termination::LinesearchFail;
      run.trace().message = "iteration " + std::to_string(k) + ": Armijo backtracking exhausted";
      break;
    }
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &vg.grad;
    v.G = &vg.grad;
    v.x_next = &x_next;
    v.lambda = lambda;
    v.F_x = vg.value;
    v.F_next = phi;
    run.notify(v);
    x = std::move(x_next);
    if (!run.record(k + 1, phi, lambda)) break;
  }
  run.trace().x_final = std::move(x);
}

void run_adgd(Run& run, DenseVector x) {
  CompositeProblem& p = run.problem();
  const double lambda0 = run.opts().adgd_lambda0;
  run.trace().set_meta("lambda0", num(lambda0));
  run.trace().set_meta("theta0", "0");
  if (!run.record(0, objective_uncounted(p, x), 0.0)) return;
  DenseVector grad = p.smooth.gradient(x);
  if (run.converged(grad)) {
    run.trace().x_final = std::move(x);
    return;
  }
  // Bootstrap gradient step.
  DenseVector x_prev = x;
  DenseVector grad_prev = grad;
  x = axpy(x, -lambda0, grad);
  AdgdStep st{lambda0, 0.0};
  if (!run.record(1, objective_uncounted(p, x), lambda0)) return;
  for (long k = 1; k < run.opts().max_iter; ++k) {
    grad = p.smooth.gradient(x);
    if (run.converged(grad)) break;
    st = adgd_stepsize(st.lambda, st.theta, norm2(x - x_prev), norm2(grad - grad_prev));
    DenseVector x_next = axpy(x, -st.lambda, grad);
    const double F_next = objective_uncounted(p, x_next);
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &grad;
    v.G = &grad;
    v.x_next = &x_next;
    v.lambda = st.lambda;
    v.F_x = kNaN;
    v.F_next = F_next;
    run.notify(v);
    x_prev = std::move(x);
    grad_prev = std::move(grad);
    x = std::move(x_next);
    if (!run.record(k + 1, F_next, st.lambda)) break;
  }
  run.trace().x_final = std::move(x);
}

// y_{k+1} = x_k - λ_k ∇f(x_k), x_{k+1} = y_{k+1} + β_k (y_{k+1} - y_k).
void run_adgd_accel(Run& run, DenseVector x) {
  CompositeProblem& p = run.problem();
  AdgdAccelState st;
  st.lambda = run.opts().adgd_lambda0;
  st.big_lambda = 1.0 / st.lambda;
  run.trace().set_meta("lambda0", num(st.lambda));
  run.trace().set_meta("Lambda0", num(st.big_lambda));
  if (!run.record(0, objective_uncounted(p, x), 0.0)) return;
  DenseVector grad = p.smooth.gradient(x);
  if (run.converged(grad)) {
    run.trace().x_final = std::move(x);
    return;
  }
  DenseVector x_prev = x;
  DenseVector grad_prev = grad;
  x = axpy(x, -st.lambda, grad);
  DenseVector y = x;
  if (!run.record(1, objective_uncounted(p, y), st.lambda)) return;
  for (long k = 1; k < run.opts().max_iter; ++k) {
    grad = p.smooth.gradient(x);
    if (run.converged(grad)) break;
    const AdgdAccelStep step = adgd_accel_update(st, norm2(x - x_prev), norm2(grad - grad_prev));
    st = step.state;
    DenseVector y_next = axpy(x, -st.lambda, grad);
    DenseVector x_next = axpy(y_next, step.momentum, y_next - y);
    const double F_next = objective_uncounted(p, y_next);
    IterationView v;
    v.k = k;
    v.x = &x;
    v.grad = &grad;
    v.G = &grad;
    v.x_next = &x_next;
    v.y_next = &y_next;
    v.y_cur = &y;
    v.lambda = st.lambda;
    v.F_x = kNaN;
    v.F_next = F_next;
    v.beta_cur = step.momentum;
    run.notify(v);
    x_prev = std::move(x);
    grad_prev = std::move(grad);
    x = std::move(x_next);
    y = std::move(y_next);
    if (!run.record(k + 1, F_next, st.lambda)) break;
  }
  run.trace().x_final = std::move(y);
}

}  // namespace

std::string_view solver_name(SolverKind kind) {
  for (const auto& [k, name] : kSolverNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (const auto& [k, n] : kSolverNames)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<SolverKind>& all_solvers() {
  static const std::vector<SolverKind> kinds = [] {
    std::vector<SolverKind> v;
    for (const auto& [k, n] : kSolverNames) v.push_back(k);
    return v;
  }();
  return kinds;
}

bool supports_composite(SolverKind kind) {
  return kind == SolverKind::Alg1 || kind == SolverKind::Alg2 || kind == SolverKind::ISTA ||
         kind == SolverKind::FISTA;
}

bool is_accelerated(SolverKind kind) {
  return kind == SolverKind::Alg2 || kind == SolverKind::NAGD || kind == SolverKind::FISTA ||
         kind == SolverKind::AdGDAccel;
}

bool compatible(SolverKind kind, const CompositeProblem& problem) {
  return problem.smooth_only() || supports_composite(kind);
}

void SolverOptions::validate() const {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be nonnegative");
  if (!(c1 > 0.0 && c1 < 1.0)) throw std::invalid_argument("c1 must lie in (0,1)");
  if (L_override && !(*L_override > 0.0)) throw std::invalid_argument("L override must be positive");
  if (!(adgd_lambda0 > 0.0)) throw std::invalid_argument("adgd lambda0 must be positive");
  ls.validate();
}

double objective_uncounted(const CompositeProblem& problem, const DenseVector& x) {
  return problems::value(problem.smooth.data(), x) + prox::h_value(problem.prox_term, x);
}

Trace solve(SolverKind kind, CompositeProblem& problem, const DenseVector& x0,
            const SolverOptions& opts, const Observer& observer) {
  opts.validate();
  if (!compatible(kind, problem)) {
    throw IncompatibleSolver(std::string(solver_name(kind)) +
                             " does not accept a nonsmooth term (" +
                             prox::describe(problem.prox_term) + ")");
  }
  if (kind == SolverKind::PolyakGD && !opts.f_star_hint) {
    throw IncompatibleSolver("polyak needs an optimum hint (f_star)");
  }
  if (x0.size() != problem.dim()) throw std::invalid_argument("solve: x0 has the wrong dimension");
  if (!all_finite(x0)) throw std::invalid_argument("solve: x0 must be finite");

  Run run(kind, problem, opts, observer);
  if (kind == SolverKind::Alg1 || kind == SolverKind::Alg2 || kind == SolverKind::ArmijoGD) {
    run.trace().set_meta("ls_factor", num(opts.ls.factor));
    run.trace().set_meta("lambda_init", num(opts.ls.lambda_init));
    run.trace().set_meta("max_backtracks", std::to_string(opts.ls.max_backtracks));
  }
  if (kind == SolverKind::Alg2) run.trace().set_meta("alg2_warm_start", opts.alg2_warm_start ? "1" : "0");
  switch (kind) {
    case SolverKind::Alg1: run_alg1(run, x0); break;
    case SolverKind::Alg2: run_alg2(run, x0); break;
    case SolverKind::GD: run_constant(run, x0, false); break;
    case SolverKind::ISTA: run_constant(run, x0, true); break;
    case SolverKind::NAGD: run_constant_accel(run, x0, false); break;
    case SolverKind::FISTA: run_constant_accel(run, x0, true); break;
    case SolverKind::PolyakGD: run_polyak(run, x0); break;
    case SolverKind::ArmijoGD: run_armijo(run, x0); break;
    case SolverKind::AdGD: run_adgd(run, x0); break;
    case SolverKind::AdGDAccel: run_adgd_accel(run, x0); break;
  }
  return std::move(run.trace());
}

}  // namespace zostep::solvers
