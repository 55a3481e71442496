#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "zostep/problems/build.hpp"

namespace zostep::harness {

inline constexpr double kReferenceMargin = 1e-12;
inline constexpr double kReferenceTol = 1e-14;
inline constexpr double kCheckpointTol = 1e-10;
inline constexpr long kDefaultReferenceBudget = 20000;

struct ReferenceRecord {
  std::string problem;
  double f_star = 0.0;          // best_objective - margin
  double best_objective = 0.0;  // smallest F seen
  std::string solver;           // solvers that were run, '+'-joined
  std::string best_solver;
  long iterations = 0;          // summed over the runs
  bool converged = false;
  bool warning = false;         // best value still moving at the last checkpoint
  std::optional<double> direct_f;         // quad only: value at the linear-solve minimizer
  std::optional<double> direct_residual;  // relative residual of that solve
};

/// Long runs of the strongest applicable methods: Alg2 then Alg1 for smooth
/// convex families, FISTA then Alg2 for composite ones, Alg1 for cubic. For
/// quad the linear system Bx = -b is also solved directly and the smaller
/// value wins.
ReferenceRecord compute_reference(const problems::ProblemInstance& inst, long budget,
                                  const std::string& name);

/// Minimizer of the quadratic family via conjugate gradients; nullopt for others.
struct DirectSolve {
  DenseVector x;
  double f = 0.0;
  double residual = 0.0;
  bool converged = false;
};
std::optional<DirectSolve> direct_quadratic_solve(const problems::ProblemInstance& inst);

void write_reference(std::ostream& out, const ReferenceRecord& rec);
ReferenceRecord read_reference(std::istream& in);
void save_reference(const std::filesystem::path& path, const ReferenceRecord& rec);
ReferenceRecord load_reference(const std::filesystem::path& path);

/// `<stem>.ref` next to a problem file.
std::filesystem::path reference_path_for(const std::filesystem::path& problem_path);

}  // namespace zostep::harness
