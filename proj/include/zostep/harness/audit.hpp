#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "zostep/problems/build.hpp"

namespace zostep::harness {

/// Outcome of one named invariant accumulated over every instance it applies
/// to. A margin is the remaining room before the invariant breaks; negative
/// margins are violations.
struct CheckResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void record(double margin, const std::string& where = {});
};

struct AuditOptions {
  std::uint64_t seed = 0x5eed;
  int samples = 8;                 // random points per sampled invariant
  long solver_iters = 300;
  long slow_solver_iters = 40;     // maxcut, whose oracle costs an eigendecomposition
  /// Added to the prox threshold inside the lemma (ii) audit. Nonzero values
  /// exist only to demonstrate that the audit catches a broken operator.
  double prox_shift = 0.0;
};

struct AuditReport {
  std::vector<CheckResult> checks;
  std::size_t instances = 0;

  bool all_passed() const;
  /// True when nothing was checked, which passes but deserves a warning.
  bool empty() const { return instances == 0; }
  const CheckResult* find(const std::string& name) const;
  /// One line per invariant: name, PASS/FAIL, cases, worst margin.
  std::string to_text() const;
};

AuditReport run_audit(const std::vector<problems::ProblemInstance>& instances,
                      const AuditOptions& options = {});

}  // namespace zostep::harness
