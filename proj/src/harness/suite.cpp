#include "zostep/harness/suite.hpp"

#include <sstream>

#include "zostep/harness/reference.hpp"
#include "zostep/problems/problem_file.hpp"

namespace zostep::harness {

SummaryRow summarize(const std::string& problem, const std::string& solver,
                     const solvers::Trace& trace) {
  SummaryRow row;
  row.problem = problem;
  row.solver = solver;
  row.status = std::string(solvers::termination_name(trace.termination));
  if (trace.records.empty()) return row;
  const auto& last = trace.records.back();
  row.iterations = last.iter;
  row.grad_evals = last.grad_evals;
  row.f_evals = last.f_evals;
  row.prox_evals = last.prox_evals;
  row.final_value = last.f_value;
  row.final_gap = last.gap;
  for (const auto& r : trace.records) {
    if (!r.gap) continue;
    for (int t = 0; t < 3; ++t) {
      if (!row.iters_to[t] && *r.gap <= kGapThresholds[t]) {
        row.iters_to[t] = r.iter;
        row.grads_to[t] = r.grad_evals;
      }
    }
  }
  return row;
}

namespace {

std::string opt_long(const std::optional<long>& v) { return v ? std::to_string(*v) : "NA"; }

}  // namespace

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.problem << ',' << r.solver << ',' << r.status << ',' << r.iterations << ','
        << r.grad_evals << ',' << r.f_evals << ',' << r.prox_evals << ','
        << format_number(r.final_value) << ',' << (r.final_gap ? format_number(*r.final_gap) : "NA");
    for (int t = 0; t < 3; ++t) out << ',' << opt_long(r.iters_to[t]) << ',' << opt_long(r.grads_to[t]);
    out << '\n';
  }
  return out.str();
}

SuiteResult run_suite(const SuiteConfig& config, std::uint64_t master_seed,
                      const std::filesystem::path& out_dir, Format format, std::ostream* log) {
  namespace fs = std::filesystem;
  const auto params = config.expand_problems(master_seed);
  const fs::path problem_dir = out_dir / "problems";
  const fs::path trace_dir = out_dir / "traces";
  fs::create_directories(problem_dir);
  fs::create_directories(trace_dir);

  const auto n_problems = static_cast<long>(params.size());
  std::vector<problems::ProblemInstance> instances(params.size());
  std::vector<ReferenceRecord> refs(params.size());
  std::vector<std::string> names(params.size());
  std::vector<std::string> setup_errors(params.size());

  // Generation and reference runs, one problem per task.
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n_problems; ++i) {
    try {
      names[i] = problems::instance_name(params[i]);
      instances[i] = problems::build_problem(params[i]);
      problems::save_problem(problem_dir / (names[i] + ".problem"), instances[i]);
      refs[i] = compute_reference(instances[i], config.reference_budget_for(params[i].family), names[i]);
      save_reference(problem_dir / (names[i] + ".ref"), refs[i]);
    } catch (const std::exception& e) {
      setup_errors[i] = e.what();
    }
  }

  struct Job {
    std::size_t problem;
    solvers::SolverKind solver;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!setup_errors[i].empty()) continue;
    for (const auto s : config.solvers) {
      if (solvers::compatible(s, instances[i].problem)) jobs.push_back({i, s});
    }
  }

  const auto n_jobs = static_cast<long>(jobs.size());
  std::vector<SummaryRow> rows(jobs.size());
  std::vector<std::string> job_errors(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < n_jobs; ++j) {
    const auto& job = jobs[j];
    const auto& inst = instances[job.problem];
    const std::string solver = std::string(solvers::solver_name(job.solver));
    try {
      problems::CompositeProblem p = inst.problem;
      p.smooth.reset_counters();
      p.f_star = refs[job.problem].f_star;
      auto opts = config.solver_options(inst.params.family);
      if (job.solver == solvers::SolverKind::PolyakGD) opts.f_star_hint = refs[job.problem].f_star;
      solvers::Trace t = solvers::solve(job.solver, p, inst.x0, opts);
      t.set_meta("problem", names[job.problem]);
      t.set_meta("seed", std::to_string(inst.params.seed));
      t.set_meta("master_seed", std::to_string(master_seed));
      t.set_meta("f_star", format_number(refs[job.problem].f_star));
      save_trace(trace_dir / (names[job.problem] + "__" + solver + "." + std::string(format_extension(format))), t,
                 format);
      rows[j] = summarize(names[job.problem], solver, t);
      if (t.termination == solvers::Termination::LinesearchFail ||
          t.termination == solvers::Termination::Diverged) {
        job_errors[j] = t.message;
      }
    } catch (const std::exception& e) {
      rows[j] = SummaryRow{};
      rows[j].problem = names[job.problem];
      rows[j].solver = solver;
      rows[j].status = "error";
      job_errors[j] = e.what();
    }
  }

  SuiteResult result;
  result.problem_count = params.size();
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!setup_errors[i].empty()) result.failures.push_back(names[i] + ": " + setup_errors[i]);
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (!job_errors[j].empty()) result.failures.push_back(rows[j].problem + " " + rows[j].solver + ": " + job_errors[j]);
  }
  result.rows = std::move(rows);
  result.summary_path = out_dir / "summary.csv";
  write_text_file(result.summary_path, summary_csv(result.rows));
  if (log) {
    *log << "suite: " << params.size() << " problems, " << jobs.size() << " runs, "
         << result.failures.size() << " failures\n";
    for (const auto& f : result.failures) *log << "  failed: " << f << '\n';
  }
  return result;
}

}  // namespace zostep::harness
