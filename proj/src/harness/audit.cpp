#include "zostep/harness/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "zostep/harness/output.hpp"
#include "zostep/harness/reference.hpp"
#include "zostep/linesearch/linesearch.hpp"
#include "zostep/numkit/kernels.hpp"
#include "zostep/numkit/linalg.hpp"
#include "zostep/problems/problem_file.hpp"
#include "zostep/proxcore/lemma.hpp"
#include "zostep/randgen/recipes.hpp"
#include "zostep/randgen/rng.hpp"
#include "zostep/solvers/solve.hpp"

namespace zostep::harness {

void CheckResult::record(double margin, const std::string& where) {
  ++cases;
  if (!(margin >= 0.0)) {
    ++failures;
    if (first_failure.empty()) first_failure = where;
  }
  if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
  worst_margin = std::min(worst_margin, margin);
}

bool AuditReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const CheckResult* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string AuditReport::to_text() const {
  std::ostringstream out;
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%-40s %s cases=%ld failures=%ld worst_margin=%.6g", c.name.c_str(),
                  c.passed() ? "PASS" : "FAIL", c.cases, c.failures, c.worst_margin);
    out << buf;
    if (!c.passed()) out << " first=" << c.first_failure;
    out << '\n';
  }
  return out.str();
}

namespace {

using problems::Family;

class Battery {
 public:
  CheckResult& operator[](const std::string& name) {
    const auto it = index_.find(name);
    if (it != index_.end()) return checks_[it->second];
    index_[name] = checks_.size();
    CheckResult fresh;
    fresh.name = name;
    checks_.push_back(fresh);
    return checks_.back();
  }
  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  std::vector<CheckResult> checks_;
  std::map<std::string, std::size_t> index_;
};

DenseVector perturb(randgen::Rng& rng, const DenseVector& x, double scale) {
  DenseVector out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * rng.next_gaussian();
  return out;
}

// Point in dom h.
DenseVector feasible(const prox::ProxTerm& term, DenseVector x) {
  if (const auto* ball = std::get_if<prox::L1BallTerm>(&term)) return prox::project_l1_ball(x, ball->radius);
  return x;
}

const DenseMatrix& data_matrix(const problems::FamilyData& data) {
  return std::visit(
      [](const auto& d) -> const DenseMatrix& {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, problems::QuadraticData> || std::is_same_v<T, problems::CubicData>) {
          return d.hessian;
        } else if constexpr (std::is_same_v<T, problems::MaxCutData>) {
          return d.c;
        } else {
          return d.a;
        }
      },
      data);
}

bool has_global_L(Family f) { return f != Family::Cubic && f != Family::MaxCut; }

double scale_of(double v) { return std::max(1.0, std::abs(v)); }

struct Ctx {
  const problems::ProblemInstance& inst;
  const std::string& name;
  const AuditOptions& opt;
  randgen::Rng& rng;
  Battery& b;

  problems::CompositeProblem fresh() const {
    problems::CompositeProblem p = inst.problem;
    p.smooth.reset_counters();
    return p;
  }
  long iters() const {
    return inst.params.family == Family::MaxCut ? opt.slow_solver_iters : opt.solver_iters;
  }
};

void numkit_checks(Ctx& c) {
  auto p = c.fresh();
  const DenseVector& x = c.inst.x0;
  const DenseVector g = p.smooth.gradient(x);
  const double d1 = numkit::dot(x, g);
  const double d2 = numkit::dot(g, x);
  c.b["numkit.dot_symmetry"].record(1e-12 * scale_of(d1) - std::abs(d1 - d2), c.name);
  c.b["numkit.parallel_matches_serial"].record(
      -std::abs(numkit::dot(x, g) - numkit::serial::dot(x, g)), c.name);

  const DenseMatrix& m = data_matrix(p.smooth.data());
  const DenseVector v = perturb(c.rng, DenseVector(m.cols()), 1.0);
  const DenseVector w = perturb(c.rng, DenseVector(m.rows()), 1.0);
  c.b["numkit.parallel_matches_serial"].record(
      -norm_inf(numkit::matvec(m, v) - numkit::serial::matvec(m, v)), c.name);
  c.b["numkit.parallel_matches_serial"].record(
      -norm_inf(numkit::matvec_transposed(m, w) - numkit::serial::matvec_transposed(m, w)), c.name);

  const auto s1 = numkit::spectral_norm(m);
  const auto s2 = numkit::spectral_norm(m.transposed());
  c.b["numkit.spectral_transpose"].record(1e-8 * scale_of(s1.value) - std::abs(s1.value - s2.value),
                                          c.name);

  const auto& d = p.smooth.data();
  const bool symmetric = std::holds_alternative<problems::QuadraticData>(d) ||
                         std::holds_alternative<problems::CubicData>(d) ||
                         std::holds_alternative<problems::MaxCutData>(d);
  const DenseMatrix sym = symmetric ? m : numkit::gram(m);
  const auto eig = numkit::jacobi_eig(sym);
  double tr = 0.0;
  for (std::size_t i = 0; i < sym.rows(); ++i) tr += sym(i, i);
  const double fro = frobenius_norm(sym);
  c.b["numkit.jacobi_trace"].record(1e-9 * std::max(1.0, fro) - std::abs(sum(eig.eigenvalues) - tr),
                                    c.name);
  DenseMatrix vtv = numkit::gram(eig.vectors);
  for (std::size_t i = 0; i < vtv.rows(); ++i) vtv(i, i) -= 1.0;
  c.b["numkit.jacobi_orthonormal"].record(1e-9 - max_abs(vtv), c.name);
  double desc = 0.0;
  for (std::size_t i = 1; i < eig.eigenvalues.size(); ++i) {
    desc = std::min(desc, eig.eigenvalues[i - 1] - eig.eigenvalues[i]);
  }
  c.b["numkit.jacobi_sorted"].record(desc, c.name);
}

void randgen_checks(Ctx& c) {
  std::ostringstream a, b;
  problems::write_problem(a, problems::build_problem(c.inst.params));
  problems::write_problem(b, problems::build_problem(c.inst.params));
  c.b["randgen.determinism"].record(a.str() == b.str() ? 0.0 : -1.0, c.name);
}

void problems_checks(Ctx& c) {
  const Family fam = c.inst.params.family;
  const std::size_t n = c.inst.x0.size();

  problems::FamilyData fd_data = c.inst.problem.smooth.data();
  if (auto* mc = std::get_if<problems::MaxCutData>(&fd_data)) mc->eps = 0.1;
  for (int s = 0; s < 2; ++s) {
    const DenseVector x = s == 0 ? c.inst.x0 : perturb(c.rng, c.inst.x0, 0.3);
    const DenseVector g = problems::value_grad(fd_data, x).grad;
    DenseVector fdg(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
      DenseVector xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      fdg[i] = (problems::value(fd_data, xp) - problems::value(fd_data, xm)) / (2.0 * h);
    }
    const double rel = norm_inf(fdg - g) / std::max(1.0, norm_inf(g));
    c.b["problems.gradient_fd"].record(1e-4 - rel, c.name);
  }

  const auto& data = c.inst.problem.smooth.data();
  for (int s = 0; s < c.opt.samples; ++s) {
    const DenseVector a = perturb(c.rng, c.inst.x0, 1.0);
    const DenseVector b = perturb(c.rng, c.inst.x0, 1.0);
    const double fa = problems::value(data, a);
    const double fb = problems::value(data, b);
    const double fm = problems::value(data, 0.5 * (a + b));
    c.b["problems.convexity"].record(0.5 * (fa + fb) + 1e-10 * std::max(scale_of(fa), scale_of(fb)) - fm,
                                     c.name);
    if (has_global_L(fam)) {
      const double lhs = norm2(problems::value_grad(data, a).grad - problems::value_grad(data, b).grad);
      const double rhs = c.inst.problem.L_safe * norm2(a - b);
      c.b["problems.smoothness_bound"].record(rhs * (1.0 + 1e-9) - lhs, c.name);
    }
  }

  auto p = c.fresh();
  (void)p.smooth.value(c.inst.x0);
  (void)p.smooth.gradient(c.inst.x0);
  (void)p.smooth.value_grad(c.inst.x0);
  const bool counts_ok = p.smooth.eval_count() == 2 && p.smooth.grad_count() == 2;
  c.b["problems.oracle_counters"].record(counts_ok ? 0.0 : -1.0, c.name);
}

void prox_checks(Ctx& c) {
  const auto& term = c.inst.problem.prox_term;
  const double L = c.inst.problem.L_safe;
  auto p = c.fresh();
  for (int s = 0; s < c.opt.samples; ++s) {
    const double lam = (0.1 + c.rng.next_uniform()) / L;
    const DenseVector u = perturb(c.rng, c.inst.x0, 2.0);
    const DenseVector v = perturb(c.rng, c.inst.x0, 2.0);
    const double lhs = norm2(prox::apply_prox(term, u, lam) - prox::apply_prox(term, v, lam));
    c.b["prox.nonexpansive"].record(norm2(u - v) + 1e-12 - lhs, c.name);
    if (const auto* ball = std::get_if<prox::L1BallTerm>(&term)) {
      const DenseVector w = perturb(c.rng, DenseVector(u.size()), 3.0);
      c.b["prox.ball_feasibility"].record(ball->radius + 1e-10 - norm1(prox::project_l1_ball(w, ball->radius)),
                                          c.name);
    }

    const DenseVector x = feasible(term, perturb(c.rng, c.inst.x0, 0.5));
    const DenseVector g = p.smooth.gradient(x);
    const auto gm = prox::gradient_mapping(g, x, lam, term);
    const DenseVector back = (1.0 / lam) * (x - gm.x_plus);
    c.b["prox.gradient_mapping_consistency"].record(
        1e-12 * std::max(1.0, norm_inf(x) / lam) - norm_inf(back - gm.G), c.name);
    if (prox::is_zero(term)) {
      c.b["prox.gradient_mapping_consistency"].record(-norm_inf(gm.G - g), c.name);
    }

    prox::ProxOperator op = prox::prox_operator(term);
    if (c.opt.prox_shift != 0.0) {
      const double shift = c.opt.prox_shift;
      op = [term, shift](const DenseVector& pt, double l) {
        return prox::prox_l1(prox::apply_prox(term, pt, l), shift);
      };
    }
    const DenseVector y = feasible(term, perturb(c.rng, c.inst.x0, 1.0));
    const auto ii = prox::lemma1_ii(term, op, x, y, lam, g);
    c.b["prox.lemma1_ii"].record(ii.rhs + prox::kLemmaSlack * std::max(1.0, std::abs(ii.rhs)) - ii.lhs,
                                 c.name);
    // Probe along the implied subgradient, where a wrong threshold shows first.
    const auto gm_op = prox::gradient_mapping(g, x, lam, op);
    const DenseVector probe = feasible(term, axpy(gm_op.x_plus, lam, gm_op.G - g));
    const auto pr = prox::lemma1_ii(term, op, x, probe, lam, g);
    c.b["prox.lemma1_ii"].record(pr.rhs + prox::kLemmaSlack * std::max(1.0, std::abs(pr.rhs)) - pr.lhs,
                                 c.name);

    const auto ls = linesearch::backtrack(p, x, g, 1.0, linesearch::LinesearchConfig{});
    const DenseVector z = feasible(term, perturb(c.rng, c.inst.x0, 1.0));
    const auto iii = prox::lemma1_iii(p, x, z, ls.lambda);
    c.b["prox.lemma1_iii"].record(
        iii.rhs + 1e-8 * std::max({1.0, std::abs(iii.lhs), std::abs(iii.rhs)}) - iii.lhs, c.name);
    const auto iv = prox::lemma1_iv(p, x, ls.lambda);
    const double carried = 2.0 * linesearch::acceptance_slack(ls.phi_lambda, 1e-12) / ls.lambda;
    c.b["prox.lemma1_iv"].record(iv.rhs + prox::kLemmaSlack + carried - iv.lhs, c.name);
  }
}

void linesearch_checks(Ctx& c) {
  const linesearch::LinesearchConfig cfg;
  for (int s = 0; s < std::max(1, c.opt.samples / 2); ++s) {
    auto p = c.fresh();
    const DenseVector x = feasible(p.prox_term, perturb(c.rng, c.inst.x0, 0.5));
    const DenseVector g = p.smooth.gradient(x);
    p.smooth.reset_counters();
    const double start = 4.0 / c.inst.problem.L_safe * (1.0 + c.rng.next_uniform());
    const auto out = linesearch::backtrack(p, x, g, start, cfg);
    const long t = static_cast<long>(out.trials.size());
    const bool counts = p.smooth.eval_count() == out.f_evals && out.f_evals == 2 * t &&
                        out.prox_evals == t && p.smooth.grad_count() == 0 && out.backtracks == t - 1;
    c.b["linesearch.accounting"].record(counts ? 0.0 : -1.0, c.name);

    double mono = out.trials.front() == start && out.trials.back() == out.lambda ? 0.0 : -1.0;
    for (std::size_t i = 1; i < out.trials.size(); ++i) {
      const double expect = out.trials[i - 1] * cfg.factor;
      mono = std::min(mono, 1e-15 * expect - std::abs(out.trials[i] - expect));
    }
    c.b["linesearch.monotone_candidates"].record(mono, c.name);

    if (p.smooth_only()) {
      const double gsq = norm_sq(g);
      for (const double lam : out.trials) {
        const auto ev = linesearch::zo_condition(p, x, g, lam, cfg.slack);
        const bool smooth = linesearch::zo_condition_smooth(ev.phi_lambda, ev.phi_2lambda, gsq, lam, cfg.slack);
        double margin = 0.0;
        if (ev.holds != smooth) {
          // Disagreement is tolerated only at the rounding level of the boundary.
          const double gap = std::abs(ev.phi_2lambda - ev.rhs);
          margin = 1e-12 * scale_of(ev.phi_lambda) - gap;
        }
        c.b["linesearch.smooth_general_agreement"].record(margin, c.name);
      }
    }
  }
}

void solver_checks(Ctx& c, const std::optional<DirectSolve>& direct) {
  const Family fam = c.inst.params.family;
  const auto& data = c.inst.problem.smooth.data();
  solvers::SolverOptions opts;
  opts.max_iter = c.iters();
  opts.tol = 0.0;
  const double C = opts.ls.factor;
  const double L = c.inst.problem.L_safe;

  auto p1 = c.fresh();
  const bool smooth = p1.smooth_only();
  const auto alg1_obs = [&](const solvers::IterationView& v) {
    const double Fx = std::isnan(v.F_x) ? solvers::objective_uncounted(c.inst.problem, *v.x) : v.F_x;
    const double rhs = Fx - 0.5 * v.lambda * norm_sq(*v.G) + 1e-8 * scale_of(Fx);
    c.b["solvers.alg1_descent"].record(rhs - v.F_next, c.name);
    if (smooth) {
      const auto audit = linesearch::stepsize_interval_audit(
          *v.x, v.lambda, [&](const DenseVector& z) { return problems::value(data, z); }, *v.grad);
      c.b["linesearch.interval_audit"].record(audit.upper + audit.tolerance - audit.lambda, c.name);
    }
    // Below rounding level the acceptance test compares noise, so the bound is
    // only meaningful while the promised decrease is resolvable.
    const bool resolvable = C / (6.0 * L) * norm_sq(*v.G) > 1e-10 * scale_of(Fx);
    if (has_global_L(fam) && resolvable) {
      c.b["solvers.stepsize_lower_bound"].record(v.lambda - (C / (3.0 * L) - 1e-12), c.name);
    }
  };
  const solvers::Trace t1 = solvers::solve(solvers::SolverKind::Alg1, p1, c.inst.x0, opts, alg1_obs);

  auto p2 = c.fresh();
  double prev_lambda = std::numeric_limits<double>::infinity();
  double prev_E = std::numeric_limits<double>::quiet_NaN();
  const auto alg2_obs = [&](const solvers::IterationView& v) {
    c.b["solvers.alg2_lambda_monotone"].record(prev_lambda - v.lambda, c.name);
    prev_lambda = v.lambda;
    if (direct) {
      const double delta = v.F_next - direct->f;
      const DenseVector u = axpy(v.beta_next * *v.x_next, -(v.beta_next - 1.0), *v.y_next) - direct->x;
      const double E = v.lambda * v.beta_cur * v.beta_cur * delta + 0.5 * norm_sq(u);
      const double before = std::isnan(prev_E) ? 0.5 * norm_sq(c.inst.x0 - direct->x) : prev_E;
      c.b["solvers.alg2_lyapunov"].record(1e-8 * scale_of(before) - (E - before), c.name);
      prev_E = E;
    }
  };
  const solvers::Trace t2 = solvers::solve(solvers::SolverKind::Alg2, p2, c.inst.x0, opts, alg2_obs);

  if (direct) {
    const double R = norm_sq(c.inst.x0 - direct->x);
    for (std::size_t k = 1; k < t1.records.size(); ++k) {
      const double bound = L * R / static_cast<double>(k);
      c.b["solvers.alg1_rate"].record(bound - (t1.records[k].f_value - direct->f), c.name);
    }
    for (std::size_t i = 1; i < t2.records.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      const double bound = 6.0 * L / C * R / (k * k);
      c.b["solvers.alg2_rate"].record(bound - (t2.records[i].f_value - direct->f), c.name);
    }
  }

  if (smooth) {
    auto pz = c.fresh();
    pz.prox_term = prox::L1Term{0.0};
    solvers::SolverOptions short_opts = opts;
    short_opts.max_iter = std::min<long>(opts.max_iter, 20);
    auto ps = c.fresh();
    const auto ta = solvers::solve(solvers::SolverKind::Alg1, ps, c.inst.x0, short_opts);
    const auto tb = solvers::solve(solvers::SolverKind::Alg1, pz, c.inst.x0, short_opts);
    const std::size_t n = std::min(ta.records.size(), tb.records.size());
    double margin = ta.records.size() == tb.records.size() ? 0.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fa = ta.records[i].f_value;
      margin = std::min(margin, 1e-8 * scale_of(fa) - std::abs(fa - tb.records[i].f_value));
    }
    c.b["solvers.smooth_composite_consistency"].record(margin, c.name);
  }

  // Every compatible method twice; records must agree apart from timing.
  solvers::SolverOptions det = opts;
  det.max_iter = std::min<long>(opts.max_iter, fam == Family::MaxCut ? 8 : 30);
  det.f_star_hint = std::min(t1.best_value(), t2.best_value()) - 1e-6;
  for (const auto kind : solvers::all_solvers()) {
    if (!solvers::compatible(kind, c.inst.problem)) continue;
    auto pa = c.fresh();
    auto pb = c.fresh();
    const auto ra = solvers::solve(kind, pa, c.inst.x0, det);
    const auto rb = solvers::solve(kind, pb, c.inst.x0, det);
    bool same = ra.records.size() == rb.records.size() && ra.termination == rb.termination;
    for (std::size_t i = 0; same && i < ra.records.size(); ++i) {
      const auto& x = ra.records[i];
      const auto& y = rb.records[i];
      same = x.iter == y.iter && x.f_value == y.f_value && x.stepsize == y.stepsize &&
             x.grad_evals == y.grad_evals && x.f_evals == y.f_evals && x.prox_evals == y.prox_evals;
    }
    c.b["solvers.dispatch_determinism"].record(same ? 0.0 : -1.0,
                                               c.name + "/" + std::string(solvers::solver_name(kind)));
    bool ordered = true;
    for (std::size_t i = 1; i < ra.records.size(); ++i) {
      const auto& a = ra.records[i - 1];
      const auto& b = ra.records[i];
      ordered = ordered && b.iter > a.iter && b.grad_evals >= a.grad_evals && b.f_evals >= a.f_evals &&
                b.prox_evals >= a.prox_evals;
    }
    c.b["solvers.trace_counters_monotone"].record(ordered ? 0.0 : -1.0,
                                                  c.name + "/" + std::string(solvers::solver_name(kind)));
  }

  // CSV schema on the Alg1 trace.
  std::ostringstream csv;
  write_trace_csv(csv, t1);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  bool schema = line == kTraceHeader;
  std::size_t rows = 0;
  while (schema && std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    schema = fields.size() == 8;
    for (std::size_t k = 0; schema && k < fields.size(); ++k) {
      if (k == 2 && fields[k].empty()) continue;
      char* end = nullptr;
      const double v = std::strtod(fields[k].c_str(), &end);
      schema = !fields[k].empty() && *end == '\0' && std::isfinite(v);
    }
    ++rows;
  }
  if (schema) {
    std::istringstream again(csv.str());
    const auto back = read_trace_csv(again);
    schema = rows == t1.records.size() && back.size() == rows;
    for (std::size_t k = 0; schema && k < rows; ++k) schema = back[k].f_value == t1.records[k].f_value;
  }
  c.b["harness.csv_schema"].record(schema ? 0.0 : -1.0, c.name);
}

}  // namespace

AuditReport run_audit(const std::vector<problems::ProblemInstance>& instances,
                      const AuditOptions& options) {
  AuditReport report;
  report.instances = instances.size();
  Battery battery;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const std::string name = problems::instance_name(inst.params);
    randgen::Rng rng = randgen::Rng::for_job(options.seed, i);
    Ctx ctx{inst, name, options, rng, battery};
    numkit_checks(ctx);
    randgen_checks(ctx);
    problems_checks(ctx);
    prox_checks(ctx);
    linesearch_checks(ctx);
    std::optional<DirectSolve> direct;
    if (inst.params.family == Family::Quad) direct = direct_quadratic_solve(inst);
    solver_checks(ctx, direct);
  }
  report.checks = battery.take();
  return report;
}

}  // namespace zostep::harness
