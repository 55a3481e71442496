#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zostep/harness/config.hpp"
#include "zostep/harness/output.hpp"
#include "zostep/solvers/trace.hpp"

namespace zostep::harness {

inline constexpr double kGapThresholds[3] = {1e-3, 1e-6, 1e-9};

/// One line of the summary table.
struct SummaryRow {
  std::string problem;
  std::string solver;
  std::string status;  // termination name, or "error" when the run threw
  long iterations = 0;
  long grad_evals = 0;
  long f_evals = 0;
  long prox_evals = 0;
  double final_value = 0.0;
  std::optional<double> final_gap;
  std::optional<long> iters_to[3];
  std::optional<long> grads_to[3];
};

/// Reduces a trace to a summary row; thresholds use the first record whose gap
/// is at or below each level.
SummaryRow summarize(const std::string& problem, const std::string& solver,
                     const solvers::Trace& trace);

inline constexpr const char* kSummaryHeader =
    "problem,solver,status,iterations,grad_evals,f_evals,prox_evals,final_f,final_gap,"
    "iters_to_1e-3,grads_to_1e-3,iters_to_1e-6,grads_to_1e-6,iters_to_1e-9,grads_to_1e-9";

std::string summary_csv(const std::vector<SummaryRow>& rows);

struct SuiteResult {
  std::filesystem::path summary_path;
  std::vector<SummaryRow> rows;
  std::vector<std::string> failures;  // "<problem> <solver>: <message>"
  std::size_t problem_count = 0;
};

/// Writes problems/ (instances and references), traces/<problem>__<solver>.<ext>
/// and summary.csv under `out_dir`. Jobs run in parallel; the summary is merged
/// afterwards in (problem, solver) configuration order.
SuiteResult run_suite(const SuiteConfig& config, std::uint64_t master_seed,
                      const std::filesystem::path& out_dir, Format format,
                      std::ostream* log = nullptr);

}  // namespace zostep::harness
