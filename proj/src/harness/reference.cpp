#include "zostep/harness/reference.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "zostep/harness/output.hpp"
#include "zostep/numkit/linalg.hpp"
#include "zostep/problems/problem_file.hpp"
#include "zostep/solvers/solve.hpp"

namespace zostep::harness {

namespace {

constexpr const char* kRefMagic = "zostep-reference";

std::vector<solvers::SolverKind> reference_solvers(const problems::ProblemInstance& inst) {
  using solvers::SolverKind;
  if (inst.params.family == problems::Family::Cubic) return {SolverKind::Alg1};
  if (!inst.problem.smooth_only()) return {SolverKind::FISTA, SolverKind::Alg2};
  return {SolverKind::Alg2, SolverKind::Alg1};
}

// Best value seen up to the 90% checkpoint, and at the end.
std::pair<double, double> checkpoints(const solvers::Trace& t) {
  double early = INFINITY;
  double last = INFINITY;
  const std::size_t cut = (t.records.size() * 9) / 10;
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    last = std::min(last, t.records[i].f_value);
    if (i < std::max<std::size_t>(cut, 1)) early = last;
  }
  return {early, last};
}

}  // namespace

std::optional<DirectSolve> direct_quadratic_solve(const problems::ProblemInstance& inst) {
  const auto* q = std::get_if<problems::QuadraticData>(&inst.problem.smooth.data());
  if (!q || !inst.problem.smooth_only()) return std::nullopt;
  const auto cg = numkit::conjugate_gradient(q->hessian, -1.0 * q->linear, 1e-12,
                                             static_cast<int>(200 * q->linear.size() + 1000));
  DirectSolve out;
  out.x = cg.x;
  out.f = problems::quadratic_value(*q, cg.x);
  out.residual = cg.relative_residual;
  out.converged = cg.converged;
  return out;
}

ReferenceRecord compute_reference(const problems::ProblemInstance& inst, long budget,
                                  const std::string& name) {
  if (budget < 1) throw std::invalid_argument("reference budget must be positive");
  ReferenceRecord rec;
  rec.problem = name;
  rec.best_objective = INFINITY;
  bool any_converged = false;
  bool settled = false;
  for (const auto kind : reference_solvers(inst)) {
    problems::CompositeProblem p = inst.problem;
    p.f_star.reset();
    p.smooth.reset_counters();
    solvers::SolverOptions opts;
    opts.max_iter = budget;
    opts.tol = kReferenceTol;
    const solvers::Trace t = solvers::solve(kind, p, inst.x0, opts);
    rec.iterations += static_cast<long>(t.records.size()) - 1;
    if (!rec.solver.empty()) rec.solver += "+";
    rec.solver += std::string(solvers::solver_name(kind));
    const auto [early, last] = checkpoints(t);
    if (t.termination == solvers::Termination::Converged) any_converged = true;
    if (t.termination == solvers::Termination::Converged || early - last <= kCheckpointTol) {
      settled = true;
    }
    if (last < rec.best_objective) {
      rec.best_objective = last;
      rec.best_solver = std::string(solvers::solver_name(kind));
    }
  }
  if (const auto direct = direct_quadratic_solve(inst)) {
    rec.direct_f = direct->f;
    rec.direct_residual = direct->residual;
    if (direct->converged) {
      settled = true;
      if (direct->f < rec.best_objective) {
        rec.best_objective = direct->f;
        rec.best_solver = "direct";
      }
    }
  }
  rec.warning = !settled;
  rec.converged = any_converged || settled;
  rec.f_star = rec.best_objective - kReferenceMargin;
  return rec;
}

void write_reference(std::ostream& out, const ReferenceRecord& r) {
  out << kRefMagic << " 1\n";
  out << "problem " << r.problem << '\n';
  out << "f_star " << format_number(r.f_star) << '\n';
  out << "best_objective " << format_number(r.best_objective) << '\n';
  out << "solver " << r.solver << '\n';
  out << "best_solver " << r.best_solver << '\n';
  out << "iterations " << r.iterations << '\n';
  out << "converged " << (r.converged ? 1 : 0) << '\n';
  out << "warning " << (r.warning ? 1 : 0) << '\n';
  if (r.direct_f) out << "direct_f " << format_number(*r.direct_f) << '\n';
  if (r.direct_residual) out << "direct_residual " << format_number(*r.direct_residual) << '\n';
}

ReferenceRecord read_reference(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != std::string(kRefMagic) + " 1") {
    throw problems::ProblemFormatError("not a reference file");
  }
  std::map<std::string, std::string> kv;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw problems::ProblemFormatError("reference: bad line '" + line + "'");
    kv[line.substr(0, sp)] = line.substr(sp + 1);
  }
  auto need = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw problems::ProblemFormatError(std::string("reference: missing ") + key);
    return it->second;
  };
  ReferenceRecord r;
  r.problem = need("problem");
  r.f_star = std::stod(need("f_star"));
  r.best_objective = std::stod(need("best_objective"));
  r.solver = need("solver");
  r.best_solver = kv.count("best_solver") ? kv["best_solver"] : "";
  r.iterations = std::stol(need("iterations"));
  r.converged = need("converged") == "1";
  r.warning = need("warning") == "1";
  if (kv.count("direct_f")) r.direct_f = std::stod(kv["direct_f"]);
  if (kv.count("direct_residual")) r.direct_residual = std::stod(kv["direct_residual"]);
  return r;
}

void save_reference(const std::filesystem::path& path, const ReferenceRecord& rec) {
  std::ostringstream ss;
  write_reference(ss, rec);
  write_text_file(path, ss.str());
}

ReferenceRecord load_reference(const std::filesystem::path& path) {
  std::istringstream ss(read_text_file(path));
  return read_reference(ss);
}

std::filesystem::path reference_path_for(const std::filesystem::path& problem_path) {
  std::filesystem::path p = problem_path;
  p.replace_extension(".ref");
  return p;
}

}  // namespace zostep::harness
