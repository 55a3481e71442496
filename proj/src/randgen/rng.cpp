#include "zostep/randgen/rng.hpp"

#include <cmath>
#include <numbers>

namespace zostep::randgen {

Rng Rng::for_job(std::uint64_t master_seed, std::uint64_t job_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(job_index), static_cast<std::uint32_t>(job_index >> 32)};
  return Rng(master_seed, std::mt19937_64(seq));
}

double Rng::next_uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::next_gaussian() {
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  // 1 - u1 lies in (0, 1], so the log is finite.
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return Rng::for_job(master_seed, index).next_u64();
}

}  // namespace zostep::randgen
