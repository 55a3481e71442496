#include "zostep/harness/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace zostep::harness {

std::string_view format_extension(Format f) { return f == Format::Json ? "json" : "csv"; }

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (csv or json)");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const solvers::Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.iter << ',' << format_number(r.f_value) << ','
        << (r.gap ? format_number(*r.gap) : std::string()) << ',' << format_number(r.stepsize)
        << ',' << r.grad_evals << ',' << r.f_evals << ',' << r.prox_evals << ','
        << format_number(r.elapsed) << '\n';
  }
}

void write_trace_json(std::ostream& out, const solvers::Trace& trace) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : trace.metadata) meta[k] = v;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : trace.records) {
    nlohmann::ordered_json j;
    j["iter"] = r.iter;
    j["f_value"] = r.f_value;
    j["gap"] = r.gap ? nlohmann::ordered_json(*r.gap) : nlohmann::ordered_json(nullptr);
    j["stepsize"] = r.stepsize;
    j["grad_evals"] = r.grad_evals;
    j["f_evals"] = r.f_evals;
    j["prox_evals"] = r.prox_evals;
    j["elapsed"] = r.elapsed;
    records.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = std::move(meta);
  doc["termination"] = std::string(solvers::termination_name(trace.termination));
  doc["message"] = trace.message;
  doc["records"] = std::move(records);
  out << doc.dump(1) << '\n';
}

void write_trace(std::ostream& out, const solvers::Trace& trace, Format format) {
  if (format == Format::Json) write_trace_json(out, trace);
  else write_trace_csv(out, trace);
}

std::string trace_meta_text(const solvers::Trace& trace) {
  std::ostringstream out;
  for (const auto& [k, v] : trace.metadata) out << k << ' ' << v << '\n';
  out << "termination " << solvers::termination_name(trace.termination) << '\n';
  if (!trace.message.empty()) out << "message " << trace.message << '\n';
  return out.str();
}

void save_trace(const std::filesystem::path& path, const solvers::Trace& trace, Format format) {
  std::ostringstream body;
  write_trace(body, trace, format);
  write_text_file(path, body.str());
  if (format == Format::Csv) write_text_file(path.string() + ".meta", trace_meta_text(trace));
}

std::vector<solvers::IterRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw std::runtime_error("trace CSV: missing or unexpected header");
  }
  std::vector<solvers::IterRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() == 7 && line.back() == ',') f.emplace_back();
    if (f.size() != 8) throw std::runtime_error("trace CSV: bad row '" + line + "'");
    solvers::IterRecord r;
    r.iter = std::stol(f[0]);
    r.f_value = std::stod(f[1]);
    if (!f[2].empty()) r.gap = std::stod(f[2]);
    r.stepsize = std::stod(f[3]);
    r.grad_evals = std::stol(f[4]);
    r.f_evals = std::stol(f[5]);
    r.prox_evals = std::stol(f[6]);
    r.elapsed = f[7].empty() ? 0.0 : std::stod(f[7]);
    out.push_back(r);
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::ios_base::failure("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::ios_base::failure("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace zostep::harness
