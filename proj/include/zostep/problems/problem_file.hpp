#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "zostep/problems/build.hpp"

namespace zostep::problems {

inline constexpr const char* kProblemMagic = "zostep-problem";
inline constexpr int kProblemFormatVersion = 1;

/// Malformed or incompatible problem file.
class ProblemFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text serialization; numbers use 17 significant digits so a round trip is exact.
void write_problem(std::ostream& out, const ProblemInstance& inst);
ProblemInstance read_problem(std::istream& in);

/// Throws std::ios_base::failure on I/O trouble, ProblemFormatError on bad content.
void save_problem(const std::filesystem::path& path, const ProblemInstance& inst);
ProblemInstance load_problem(const std::filesystem::path& path);

}  // namespace zostep::problems
