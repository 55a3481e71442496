#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zostep/solvers/trace.hpp"

namespace zostep::harness {

enum class Format { Csv, Json };

std::string_view format_extension(Format f);
Format parse_format(std::string_view name);  // throws std::invalid_argument

inline constexpr const char* kTraceHeader =
    "iter,f_value,gap,stepsize,grad_evals,f_evals,prox_evals,elapsed";

/// %.17g; empty string for an absent gap.
std::string format_number(double v);

void write_trace_csv(std::ostream& out, const solvers::Trace& trace);
void write_trace_json(std::ostream& out, const solvers::Trace& trace);
void write_trace(std::ostream& out, const solvers::Trace& trace, Format format);

/// `key value` lines: every metadata entry, then termination and message.
/// CSV traces carry no metadata of their own, so this goes to `<trace>.meta`.
std::string trace_meta_text(const solvers::Trace& trace);

/// Writes the trace to `path`, plus the `.meta` sidecar for CSV.
void save_trace(const std::filesystem::path& path, const solvers::Trace& trace, Format format);

/// Parses a CSV written by write_trace_csv (records only).
std::vector<solvers::IterRecord> read_trace_csv(std::istream& in);

/// Writes through a temporary file; throws std::ios_base::failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace zostep::harness
