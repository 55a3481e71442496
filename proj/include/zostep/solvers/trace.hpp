#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zostep/numkit/dense.hpp"

namespace zostep::solvers {

enum class Termination { Converged, MaxIter, LinesearchFail, Diverged };

std::string_view termination_name(Termination t);

struct IterRecord {
  long iter = 0;
  double f_value = 0.0;
  std::optional<double> gap;  // f_value - f_star when f_star is known
  double stepsize = 0.0;
  long grad_evals = 0;
  long f_evals = 0;
  long prox_evals = 0;
  double elapsed = 0.0;  // seconds; never compared
};

struct Trace {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<IterRecord> records;
  Termination termination = Termination::MaxIter;
  std::string message;
  DenseVector x_final;  // last iterate whose value is reported (y for accelerated methods)
  double final_stationarity = 0.0;

  void set_meta(const std::string& key, const std::string& value);
  std::optional<std::string> meta(std::string_view key) const;

  /// Smallest recorded objective.
  double best_value() const;
};

}  // namespace zostep::solvers
