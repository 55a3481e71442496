#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zostep/harness/output.hpp"
#include "zostep/problems/build.hpp"
#include "zostep/solvers/solve.hpp"

namespace zostep::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed suite description. Text form: one `key = value` per line, `#`
/// starts a comment, list values are comma separated. `max_iter.<family>` and
/// `reference_budget.<family>` override per family. Unknown keys are errors.
struct SuiteConfig {
  std::vector<problems::Family> families;
  std::vector<solvers::SolverKind> solvers;
  int replicates = 1;
  std::optional<std::uint64_t> seed;
  bool paper_scale = false;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> maxcut_dim;
  std::optional<std::size_t> samples;
  std::vector<double> etas{0.01};
  double eps = 1e-5;
  std::vector<double> cubic_ms{5.0};
  std::optional<double> gamma;
  double radius = 1.0;
  double noise_sd = 0.05;
  bool binarize_labels = false;

  std::optional<long> max_iter;
  std::map<problems::Family, long> max_iter_family;
  long reference_budget = kDefaultReferenceBudgetConfig;
  std::map<problems::Family, long> reference_budget_family;

  double tol = 1e-10;
  linesearch::LinesearchConfig ls;
  double c1 = 1e-4;
  bool alg2_warm_start = false;
  std::optional<Format> format;

  static constexpr long kDefaultReferenceBudgetConfig = 20000;

  /// 2000 for smooth families and 5000 for composite ones unless overridden.
  long iterations_for(problems::Family f) const;
  long reference_budget_for(problems::Family f) const;
  solvers::SolverOptions solver_options(problems::Family f) const;

  /// Problem parameters for every (family, hyperparameter, replicate), replicate
  /// r drawing its seed as derive_seed(master_seed, r).
  std::vector<problems::ProblemParams> expand_problems(std::uint64_t master_seed) const;
};

SuiteConfig parse_suite_config(const std::string& text);
SuiteConfig load_suite_config(const std::filesystem::path& path);

}  // namespace zostep::harness
