#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "zostep/linesearch/linesearch.hpp"
#include "zostep/problems/oracle.hpp"
#include "zostep/solvers/trace.hpp"

namespace zostep::solvers {

enum class SolverKind { Alg1, Alg2, GD, NAGD, PolyakGD, ArmijoGD, AdGD, AdGDAccel, ISTA, FISTA };

std::string_view solver_name(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view name);
const std::vector<SolverKind>& all_solvers();

bool supports_composite(SolverKind kind);
bool is_accelerated(SolverKind kind);
bool compatible(SolverKind kind, const problems::CompositeProblem& problem);

struct SolverOptions {
  long max_iter = 2000;
  double tol = 1e-10;  // stop when ‖G‖∞ <= tol
  linesearch::LinesearchConfig ls;
  double c1 = 1e-4;
  std::optional<double> L_override;
  std::optional<double> f_star_hint;
  double adgd_lambda0 = 1e-7;
  bool alg2_warm_start = false;  // start Alg2 searches at min(λ_{k-1}, warm) instead of λ_{k-1}

  void validate() const;
};

/// Thrown for solver/problem combinations that are not allowed, or a Polyak
/// run without an optimum hint.
class IncompatibleSolver : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Snapshot of one iteration, handed to an observer after the step is formed.
/// For accelerated methods x is the extrapolated point, y_next the prox-gradient
/// step from it, and F_next is F(y_next); otherwise y_next is null and F_next is
/// F(x_next).
struct IterationView {
  long k = 0;
  const DenseVector* x = nullptr;
  const DenseVector* grad = nullptr;
  const DenseVector* G = nullptr;
  const DenseVector* x_next = nullptr;
  const DenseVector* y_next = nullptr;
  const DenseVector* y_cur = nullptr;
  double lambda = 0.0;
  double F_x = 0.0;  // NaN when the method never evaluates F at x
  double F_next = 0.0;
  double beta_cur = 0.0;
  double beta_next = 0.0;
};

using Observer = std::function<void(const IterationView&)>;

/// Runs one solver. Record 0 is the starting point; record k the point after
/// k steps (y_{k+1} in the accelerated two-sequence numbering). Oracle counts
/// in the records are read from `problem.smooth`; trace objective values are
/// computed without touching those counters.
Trace solve(SolverKind kind, problems::CompositeProblem& problem, const DenseVector& x0,
            const SolverOptions& opts, const Observer& observer = {});

/// F(x) computed without advancing any counter.
double objective_uncounted(const problems::CompositeProblem& problem, const DenseVector& x);

}  // namespace zostep::solvers
