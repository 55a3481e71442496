#pragma once

#include <cstdint>
#include <random>

namespace zostep::randgen {

/// Seeded generator used everywhere data or starting points are drawn.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so streams are identical across conforming standard libraries.
/// Uniforms take the top 53 bits of one engine output and scale by 2^-53.
/// Gaussians use Box–Muller (cosine branch) on exactly two uniforms per call;
/// the sine branch is discarded so every call consumes the same amount of
/// the stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for job `job_index` of a run seeded with
  /// `master_seed`: the engine is seeded through std::seed_seq with the four
  /// 32-bit words {master lo, master hi, index lo, index hi}.
  static Rng for_job(std::uint64_t master_seed, std::uint64_t job_index);

  /// Raw 64-bit engine output.
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double next_uniform();

  /// Standard normal.
  double next_gaussian();

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  Rng(std::uint64_t seed, std::mt19937_64 engine) : seed_(seed), engine_(engine) {}

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Seed for sub-problem `index` of a run: first raw output of for_job(master, index).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace zostep::randgen
