#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zostep/problems/oracle.hpp"

namespace zostep::problems {

inline constexpr std::size_t kDeskDim = 100;
inline constexpr std::size_t kDeskMaxCutDim = 50;
inline constexpr std::size_t kPaperDim = 200;
inline constexpr std::size_t kPaperMaxCutDim = 100;

struct ProblemParams {
  Family family = Family::Quad;
  std::size_t dim = kDeskDim;
  std::size_t samples = 0;        // 0 means samples = dim; quad always uses dim
  std::uint64_t seed = 1;
  std::optional<double> gamma;    // default 1/samples
  double eta = 0.01;              // maxcut regularizer
  double eps = 1e-5;              // maxcut smoothing
  double cubic_m = 5.0;
  double radius = 1.0;            // l1constr ball
  double noise_sd = 0.05;
  double uniform_scale = 5.0;     // composite design A = scale * U(0,1)
  bool binarize_labels = false;

  std::size_t sample_count() const { return samples == 0 ? dim : samples; }
  double gamma_value() const { return gamma.value_or(1.0 / static_cast<double>(sample_count())); }
};

/// Default size for a family at desk or paper scale.
std::size_t default_dim(Family family, bool paper_scale);

struct ProblemInstance {
  ProblemParams params;
  CompositeProblem problem;
  DenseVector x0;  // shared starting point, drawn after the data
};

/// Short recipe label stored in problem files.
std::string recipe_name(Family family);

/// `<family>_d<dim>_s<seed>`, plus hyperparameters for maxcut and cubic.
std::string instance_name(const ProblemParams& params);

/// Generates data, starting point and smoothness constants from `params`.
ProblemInstance build_problem(const ProblemParams& params);

}  // namespace zostep::problems
