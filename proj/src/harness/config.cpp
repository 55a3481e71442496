#include "zostep/harness/config.hpp"

#include <charconv>
#include <functional>
#include <sstream>

#include "zostep/randgen/rng.hpp"

namespace zostep::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) throw ConfigError(key + ": not a number: '" + v + "'");
  return d;
}

long to_long(const std::string& key, const std::string& v) {
  long n = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
  return n;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

problems::Family to_family(const std::string& key, const std::string& v) {
  const auto f = problems::parse_family(v);
  if (!f) throw ConfigError(key + ": unknown family '" + v + "'");
  return *f;
}

long positive(const std::string& key, long v) {
  if (v < 1) throw ConfigError(key + ": must be positive");
  return v;
}

}  // namespace

long SuiteConfig::iterations_for(problems::Family f) const {
  if (const auto it = max_iter_family.find(f); it != max_iter_family.end()) return it->second;
  if (max_iter) return *max_iter;
  return problems::is_composite(f) ? 5000 : 2000;
}

long SuiteConfig::reference_budget_for(problems::Family f) const {
  if (const auto it = reference_budget_family.find(f); it != reference_budget_family.end()) {
    return it->second;
  }
  return reference_budget;
}

solvers::SolverOptions SuiteConfig::solver_options(problems::Family f) const {
  solvers::SolverOptions o;
  o.max_iter = iterations_for(f);
  o.tol = tol;
  o.ls = ls;
  o.c1 = c1;
  o.alg2_warm_start = alg2_warm_start;
  return o;
}

std::vector<problems::ProblemParams> SuiteConfig::expand_problems(std::uint64_t master_seed) const {
  std::vector<problems::ProblemParams> out;
  for (const auto fam : families) {
    std::vector<problems::ProblemParams> variants;
    problems::ProblemParams base;
    base.family = fam;
    base.dim = problems::default_dim(fam, paper_scale);
    if (fam == problems::Family::MaxCut) {
      if (maxcut_dim) base.dim = *maxcut_dim;
    } else if (dim) {
      base.dim = *dim;
    }
    if (samples && fam != problems::Family::MaxCut) base.samples = *samples;
    base.eps = eps;
    base.gamma = gamma;
    base.radius = radius;
    base.noise_sd = noise_sd;
    base.binarize_labels = binarize_labels;
    if (fam == problems::Family::MaxCut) {
      for (double eta : etas) {
        auto p = base;
        p.eta = eta;
        variants.push_back(p);
      }
    } else if (fam == problems::Family::Cubic) {
      for (double m : cubic_ms) {
        auto p = base;
        p.cubic_m = m;
        variants.push_back(p);
      }
    } else {
      variants.push_back(base);
    }
    for (const auto& v : variants) {
      for (int r = 0; r < replicates; ++r) {
        auto p = v;
        p.seed = randgen::derive_seed(master_seed, static_cast<std::uint64_t>(r));
        out.push_back(p);
      }
    }
  }
  return out;
}

SuiteConfig parse_suite_config(const std::string& text) {
  SuiteConfig c;
  bool have_families = false;
  bool have_solvers = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "families") {
      c.families.clear();
      for (const auto& v : split_list(val)) c.families.push_back(to_family(key, v));
      have_families = true;
    } else if (key == "solvers") {
      c.solvers.clear();
      for (const auto& v : split_list(val)) {
        const auto s = solvers::parse_solver(v);
        if (!s) throw ConfigError("solvers: unknown solver '" + v + "'");
        c.solvers.push_back(*s);
      }
      have_solvers = true;
    } else if (key == "replicates") {
      c.replicates = static_cast<int>(positive(key, to_long(key, val)));
    } else if (key == "seed") {
      c.seed = std::stoull(val);
    } else if (key == "paper_scale") {
      c.paper_scale = to_bool(key, val);
    } else if (key == "dim") {
      c.dim = static_cast<std::size_t>(positive(key, to_long(key, val)));
    } else if (key == "maxcut_dim") {
      c.maxcut_dim = static_cast<std::size_t>(positive(key, to_long(key, val)));
    } else if (key == "samples") {
      c.samples = static_cast<std::size_t>(positive(key, to_long(key, val)));
    } else if (key == "eta") {
      c.etas.clear();
      for (const auto& v : split_list(val)) c.etas.push_back(to_double(key, v));
    } else if (key == "eps") {
      c.eps = to_double(key, val);
    } else if (key == "cubic_m") {
      c.cubic_ms.clear();
      for (const auto& v : split_list(val)) c.cubic_ms.push_back(to_double(key, v));
    } else if (key == "gamma") {
      c.gamma = to_double(key, val);
    } else if (key == "radius") {
      c.radius = to_double(key, val);
    } else if (key == "noise_sd") {
      c.noise_sd = to_double(key, val);
    } else if (key == "binarize_labels") {
      c.binarize_labels = to_bool(key, val);
    } else if (key == "max_iter") {
      c.max_iter = positive(key, to_long(key, val));
    } else if (key.rfind("max_iter.", 0) == 0) {
      c.max_iter_family[to_family(key, key.substr(9))] = positive(key, to_long(key, val));
    } else if (key == "reference_budget") {
      c.reference_budget = positive(key, to_long(key, val));
    } else if (key.rfind("reference_budget.", 0) == 0) {
      c.reference_budget_family[to_family(key, key.substr(17))] = positive(key, to_long(key, val));
    } else if (key == "tol") {
      c.tol = to_double(key, val);
    } else if (key == "ls_factor") {
      c.ls.factor = to_double(key, val);
    } else if (key == "lambda_init") {
      c.ls.lambda_init = to_double(key, val);
    } else if (key == "max_backtracks") {
      c.ls.max_backtracks = static_cast<int>(to_long(key, val));
    } else if (key == "c1") {
      c.c1 = to_double(key, val);
    } else if (key == "alg2_warm_start") {
      c.alg2_warm_start = to_bool(key, val);
    } else if (key == "format") {
      try {
        c.format = parse_format(val);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("format: ") + e.what());
      }
    } else {
      throw ConfigError("unknown key '" + key + "' on line " + std::to_string(line_no));
    }
  }
  if (!have_families || c.families.empty()) throw ConfigError("families: at least one family is required");
  if (!have_solvers || c.solvers.empty()) throw ConfigError("solvers: the solver list is empty");
  if (c.etas.empty()) throw ConfigError("eta: empty list");
  if (c.cubic_ms.empty()) throw ConfigError("cubic_m: empty list");
  try {
    c.solver_options(c.families.front()).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  return parse_suite_config(read_text_file(path));
}

}  // namespace zostep::harness
