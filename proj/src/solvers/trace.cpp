#include "zostep/solvers/trace.hpp"

#include <algorithm>
#include <limits>

namespace zostep::solvers {

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIter: return "max_iter";
    case Termination::LinesearchFail: return "linesearch_fail";
    case Termination::Diverged: return "diverged";
  }
  return "unknown";
}

void Trace::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

std::optional<std::string> Trace::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return std::nullopt;
}

double Trace::best_value() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : records) best = std::min(best, r.f_value);
  return best;
}

}  // namespace zostep::solvers
