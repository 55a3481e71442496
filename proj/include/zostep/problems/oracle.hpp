#pragma once

#include <memory>
#include <optional>

#include "zostep/problems/families.hpp"
#include "zostep/proxcore/prox.hpp"

namespace zostep::problems {

/// Smooth part f with call counters. Data is shared and immutable; counters belong
/// to this instance, so give every solver run its own copy.
class SmoothOracle {
 public:
  SmoothOracle() = default;
  explicit SmoothOracle(FamilyData data);
  explicit SmoothOracle(std::shared_ptr<const FamilyData> data);

  double value(const DenseVector& x);
  DenseVector gradient(const DenseVector& x);
  /// Counts one value call and one gradient call.
  ValueGrad value_grad(const DenseVector& x);

  long eval_count() const noexcept { return evals_; }
  long grad_count() const noexcept { return grads_; }
  void reset_counters() noexcept { evals_ = grads_ = 0; }

  const FamilyData& data() const { return *data_; }
  std::shared_ptr<const FamilyData> shared_data() const { return data_; }
  std::size_t dim() const;

 private:
  std::shared_ptr<const FamilyData> data_;
  long evals_ = 0;
  long grads_ = 0;
};

struct SmoothnessConstants {
  double estimate = 1.0;  // used by linesearch-free audits
  double paper = 1.0;     // the closed-form value quoted for the family
  double safe = 1.0;      // a provable bound; constant-step baselines use this
};

struct CompositeProblem {
  SmoothOracle smooth;
  prox::ProxTerm prox_term = prox::ZeroTerm{};
  double L_estimate = 1.0;
  double L_paper = 1.0;
  double L_safe = 1.0;
  std::optional<double> f_star;

  /// F = f + h. Counts one value call.
  double objective(const DenseVector& x) { return smooth.value(x) + prox::h_value(prox_term, x); }
  bool smooth_only() const { return prox::is_zero(prox_term); }
  std::size_t dim() const { return smooth.dim(); }
};

/// Smoothness constants for a data set. `x0` only matters for the cubic family.
SmoothnessConstants smoothness_constants(const FamilyData& data, const DenseVector* x0 = nullptr);

CompositeProblem make_problem(FamilyData data, prox::ProxTerm term = prox::ZeroTerm{},
                              const DenseVector* x0 = nullptr);

}  // namespace zostep::problems
