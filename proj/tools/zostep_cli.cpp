#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zostep/harness/audit.hpp"
#include "zostep/harness/config.hpp"
#include "zostep/harness/output.hpp"
#include "zostep/harness/reference.hpp"
#include "zostep/harness/suite.hpp"
#include "zostep/problems/problem_file.hpp"
#include "zostep/solvers/solve.hpp"

namespace fs = std::filesystem;
using namespace zostep;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  bool seed_given = false;
  fs::path out_dir = ".";
  std::string format = "csv";
  bool paper_scale = false;
};

harness::Format format_of(const Globals& g) {
  try {
    return harness::parse_format(g.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

problems::Family family_of(const std::string& name) {
  const auto f = problems::parse_family(name);
  if (!f) throw UsageError("unknown family '" + name + "'");
  return *f;
}

problems::ProblemInstance load(const fs::path& p) {
  if (!fs::exists(p)) throw std::ios_base::failure("cannot open " + p.string());
  return problems::load_problem(p);
}

// generate ------------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::optional<std::size_t> dim, samples;
  std::optional<double> gamma, eta, eps, cubic_m, radius, noise_sd;
  bool binarize = false;
  std::string config;
};

int cmd_generate(const Globals& g, const GenerateArgs& a) {
  std::vector<problems::ProblemParams> params;
  if (!a.config.empty()) {
    const auto cfg = harness::load_suite_config(a.config);
    params = cfg.expand_problems(g.seed_given ? g.seed : cfg.seed.value_or(g.seed));
  } else {
    if (a.family.empty()) throw UsageError("generate: --family or --config is required");
    problems::ProblemParams p;
    p.family = family_of(a.family);
    p.dim = a.dim.value_or(problems::default_dim(p.family, g.paper_scale));
    if (a.samples) p.samples = *a.samples;
    p.seed = g.seed;
    p.gamma = a.gamma;
    if (a.eta) p.eta = *a.eta;
    if (a.eps) p.eps = *a.eps;
    if (a.cubic_m) p.cubic_m = *a.cubic_m;
    if (a.radius) p.radius = *a.radius;
    if (a.noise_sd) p.noise_sd = *a.noise_sd;
    p.binarize_labels = a.binarize;
    params.push_back(p);
  }
  fs::create_directories(g.out_dir);
  for (const auto& p : params) {
    const fs::path path = g.out_dir / (problems::instance_name(p) + ".problem");
    problems::save_problem(path, problems::build_problem(p));
    std::cout << path.string() << '\n';
  }
  return kOk;
}

// reference -----------------------------------------------------------------

int cmd_reference(const std::vector<std::string>& files, long budget) {
  for (const auto& f : files) {
    const auto inst = load(f);
    const std::string name = fs::path(f).stem().string();
    const auto rec = harness::compute_reference(inst, budget, name);
    const fs::path out = harness::reference_path_for(f);
    harness::save_reference(out, rec);
    harness::write_reference(std::cout, rec);
    if (rec.warning) std::cerr << "warning: " << name << ": reference still moving at the last checkpoint\n";
    std::cout << "written " << out.string() << '\n';
  }
  return kOk;
}

// run -----------------------------------------------------------------------

struct RunArgs {
  std::string problem;
  std::string solver = "alg1";
  std::optional<long> max_iter;
  std::optional<double> tol, ls_factor, lambda_init, c1, L, f_star;
  std::optional<int> max_backtracks;
  bool alg2_warm_start = false;
  std::string output;
};

int cmd_run(const Globals& g, const RunArgs& a) {
  const auto kind = solvers::parse_solver(a.solver);
  if (!kind) throw UsageError("unknown solver '" + a.solver + "'");
  auto inst = load(a.problem);
  if (!solvers::compatible(*kind, inst.problem)) {
    throw solvers::IncompatibleSolver(a.solver + " cannot run on the composite problem " + a.problem);
  }
  solvers::SolverOptions o;
  if (a.max_iter) o.max_iter = *a.max_iter;
  else o.max_iter = problems::is_composite(inst.params.family) ? 5000 : 2000;
  if (a.tol) o.tol = *a.tol;
  if (a.ls_factor) o.ls.factor = *a.ls_factor;
  if (a.lambda_init) o.ls.lambda_init = *a.lambda_init;
  if (a.max_backtracks) o.ls.max_backtracks = *a.max_backtracks;
  if (a.c1) o.c1 = *a.c1;
  o.L_override = a.L;
  o.alg2_warm_start = a.alg2_warm_start;
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::optional<double> f_star = a.f_star;
  const fs::path ref_path = harness::reference_path_for(a.problem);
  if (!f_star && fs::exists(ref_path)) f_star = harness::load_reference(ref_path).f_star;
  inst.problem.f_star = f_star;
  if (*kind == solvers::SolverKind::PolyakGD) o.f_star_hint = f_star;

  solvers::Trace t = solvers::solve(*kind, inst.problem, inst.x0, o);
  const std::string name = fs::path(a.problem).stem().string();
  t.set_meta("problem", name);
  t.set_meta("seed", std::to_string(inst.params.seed));
  if (f_star) t.set_meta("f_star", harness::format_number(*f_star));

  const auto fmt = format_of(g);
  if (a.output == "-") {
    harness::write_trace(std::cout, t, fmt);
  } else {
    const fs::path out = a.output.empty()
                             ? g.out_dir / (name + "__" + a.solver + "." + std::string(harness::format_extension(fmt)))
                             : fs::path(a.output);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    harness::save_trace(out, t, fmt);
    std::cerr << a.solver << " on " << name << ": " << solvers::termination_name(t.termination) << " after "
              << t.records.back().iter << " iterations, F = " << harness::format_number(t.records.back().f_value)
              << "\nwritten " << out.string() << '\n';
  }
  return kOk;
}

// suite ---------------------------------------------------------------------

int cmd_suite(const Globals& g, const std::string& config_path) {
  const auto cfg = harness::load_suite_config(config_path);
  const std::uint64_t seed = g.seed_given ? g.seed : cfg.seed.value_or(g.seed);
  auto effective = cfg;
  if (g.paper_scale) effective.paper_scale = true;
  harness::Format fmt = cfg.format.value_or(harness::Format::Csv);
  if (g.format != "csv") fmt = format_of(g);
  const auto res = harness::run_suite(effective, seed, g.out_dir, fmt, &std::cerr);
  std::cout << res.summary_path.string() << '\n';
  return kOk;
}

// check ---------------------------------------------------------------------

int cmd_check(const Globals& g, const std::vector<std::string>& files, bool defaults, double corrupt) {
  std::vector<problems::ProblemInstance> instances;
  for (const auto& f : files) instances.push_back(load(f));
  if (defaults) {
    for (const auto fam : {problems::Family::LogReg, problems::Family::Quad, problems::Family::Lse,
                           problems::Family::MaxCut, problems::Family::L1LeastSquares,
                           problems::Family::L1Constrained, problems::Family::L1LogReg, problems::Family::Cubic}) {
      problems::ProblemParams p;
      p.family = fam;
      p.dim = problems::default_dim(fam, g.paper_scale);
      p.seed = g.seed;
      instances.push_back(problems::build_problem(p));
    }
  }
  harness::AuditOptions opt;
  opt.seed = g.seed;
  opt.prox_shift = corrupt;
  const auto report = harness::run_audit(instances, opt);
  if (report.empty()) {
    std::cerr << "warning: no problems given, zero invariants checked\n";
    return kOk;
  }
  std::cout << report.to_text();
  const bool ok = report.all_passed();
  std::cout << (ok ? "all invariants hold" : "invariant violation") << " (" << report.instances
            << " problems, " << report.checks.size() << " invariants)\n";
  return ok ? kOk : kViolation;
}

// describe ------------------------------------------------------------------

int cmd_describe(const std::vector<std::string>& files) {
  if (files.empty()) {
    std::cout << "families:";
    for (const auto f : {problems::Family::LogReg, problems::Family::Quad, problems::Family::Lse,
                         problems::Family::MaxCut, problems::Family::L1LeastSquares,
                         problems::Family::L1Constrained, problems::Family::L1LogReg, problems::Family::Cubic}) {
      std::cout << ' ' << problems::family_name(f);
    }
    std::cout << "\nsolvers:";
    for (const auto s : solvers::all_solvers()) {
      std::cout << ' ' << solvers::solver_name(s) << (solvers::supports_composite(s) ? "" : "(smooth)");
    }
    std::cout << '\n';
    return kOk;
  }
  for (const auto& f : files) {
    const auto inst = load(f);
    const auto& p = inst.params;
    std::cout << "problem " << fs::path(f).stem().string() << '\n'
              << "family " << problems::family_name(p.family) << '\n'
              << "recipe " << problems::recipe_name(p.family) << '\n'
              << "dim " << p.dim << '\n'
              << "samples " << p.sample_count() << '\n'
              << "seed " << p.seed << '\n'
              << "prox " << prox::describe(inst.problem.prox_term) << '\n';
    if (p.family == problems::Family::MaxCut) {
      std::cout << "eps " << harness::format_number(p.eps) << "\neta " << harness::format_number(p.eta) << '\n';
    }
    if (p.family == problems::Family::Cubic) std::cout << "cubic_m " << harness::format_number(p.cubic_m) << '\n';
    std::cout << "L_estimate " << harness::format_number(inst.problem.L_estimate) << '\n'
              << "L_paper " << harness::format_number(inst.problem.L_paper) << '\n'
              << "L_safe " << harness::format_number(inst.problem.L_safe) << '\n'
              << "F(x0) " << harness::format_number(solvers::objective_uncounted(inst.problem, inst.x0)) << '\n';
    const fs::path ref = harness::reference_path_for(f);
    if (fs::exists(ref)) {
      std::cout << "f_star " << harness::format_number(harness::load_reference(ref).f_star) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zostep: zero-order linesearch proximal gradient methods and benchmark harness"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed (problem seed for generate, master seed for suite)")
      ->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--out-dir", g.out_dir, "output directory");
  app.add_option("--format", g.format, "trace format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--paper-scale", g.paper_scale, "use d = N = 200 and maxcut n = 100");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "write problem instances");
  gen->fallthrough();
  gen->add_option("--family", ga.family, "problem family");
  gen->add_option("--dim", ga.dim);
  gen->add_option("--samples", ga.samples);
  gen->add_option("--gamma", ga.gamma);
  gen->add_option("--eta", ga.eta, "maxcut regularizer");
  gen->add_option("--eps", ga.eps, "maxcut smoothing");
  gen->add_option("--cubic-m", ga.cubic_m);
  gen->add_option("--radius", ga.radius, "L1-ball radius");
  gen->add_option("--noise-sd", ga.noise_sd);
  gen->add_flag("--binarize-labels", ga.binarize);
  gen->add_option("--config", ga.config, "generate every problem of a suite config");

  std::vector<std::string> ref_files;
  long budget = harness::kDefaultReferenceBudget;
  auto* ref = app.add_subcommand("reference", "compute f_star for problem files");
  ref->fallthrough();
  ref->add_option("problems", ref_files)->required();
  ref->add_option("--budget", budget, "iterations per reference solver")->check(CLI::PositiveNumber);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "run one solver on one problem");
  run->fallthrough();
  run->add_option("problem", ra.problem)->required();
  run->add_option("--solver", ra.solver);
  run->add_option("--max-iter", ra.max_iter);
  run->add_option("--tol", ra.tol);
  run->add_option("--ls-factor", ra.ls_factor);
  run->add_option("--lambda-init", ra.lambda_init);
  run->add_option("--max-backtracks", ra.max_backtracks);
  run->add_option("--c1", ra.c1);
  run->add_option("--L", ra.L, "smoothness constant for constant-step methods");
  run->add_option("--f-star", ra.f_star, "optimal value; defaults to the sibling .ref file");
  run->add_flag("--alg2-warm-start", ra.alg2_warm_start);
  run->add_option("-o,--output", ra.output, "trace path, '-' for stdout");

  std::string config_path;
  auto* suite = app.add_subcommand("suite", "run a problem x solver matrix");
  suite->fallthrough();
  suite->add_option("config", config_path)->required();

  std::vector<std::string> check_files;
  bool check_defaults = false;
  double corrupt = 0.0;
  auto* check = app.add_subcommand("check", "audit invariants on problem files");
  check->fallthrough();
  check->add_option("problems", check_files);
  check->add_flag("--defaults", check_defaults, "also audit freshly generated default problems");
  check->add_option("--corrupt-prox", corrupt, "shift the prox threshold inside the lemma (ii) audit");

  std::vector<std::string> describe_files;
  auto* describe = app.add_subcommand("describe", "print problem metadata, or the available families and solvers");
  describe->fallthrough();
  describe->add_option("problems", describe_files);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(g, ga);
    if (*ref) return cmd_reference(ref_files, budget);
    if (*run) return cmd_run(g, ra);
    if (*suite) return cmd_suite(g, config_path);
    if (*check) return cmd_check(g, check_files, check_defaults, corrupt);
    if (*describe) return cmd_describe(describe_files);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {  // includes IncompatibleSolver
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const problems::ProblemFormatError& e) {
    std::cerr << "problem file error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
