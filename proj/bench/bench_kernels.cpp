#include <benchmark/benchmark.h>

#include "zostep/numkit/kernels.hpp"
#include "zostep/problems/build.hpp"
#include "zostep/randgen/rng.hpp"
#include "zostep/solvers/solve.hpp"

using namespace zostep;

namespace {

DenseVector vec(std::size_t n, std::uint64_t seed) {
  randgen::Rng r(seed);
  DenseVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = r.next_gaussian();
  return v;
}

DenseMatrix mat(std::size_t n, std::uint64_t seed) {
  randgen::Rng r(seed);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = r.next_gaussian();
  return m;
}

template <bool Parallel>
void BM_Dot(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const DenseVector a = vec(n, 1), b = vec(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? numkit::dot(a, b) : numkit::serial::dot(a, b));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_Matvec(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const DenseMatrix m = mat(n, 3);
  const DenseVector v = vec(n, 4);
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? numkit::matvec(m, v) : numkit::serial::matvec(m, v));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

template <bool Parallel>
void BM_MatvecT(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const DenseMatrix m = mat(n, 5);
  const DenseVector v = vec(n, 6);
  for (auto _ : st)
    benchmark::DoNotOptimize(Parallel ? numkit::matvec_transposed(m, v) : numkit::serial::matvec_transposed(m, v));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

template <bool Parallel>
void BM_Gram(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const DenseMatrix m = mat(n, 7);
  for (auto _ : st) benchmark::DoNotOptimize(Parallel ? numkit::gram(m) : numkit::serial::gram(m));
}

// End-to-end: one desk-scale Alg1 run on logistic regression.
void BM_Alg1LogReg(benchmark::State& st) {
  problems::ProblemParams p;
  p.family = problems::Family::LogReg;
  p.dim = static_cast<std::size_t>(st.range(0));
  const auto inst = problems::build_problem(p);
  solvers::SolverOptions o;
  o.max_iter = 200;
  o.tol = 0.0;
  for (auto _ : st) {
    auto prob = inst.problem;
    benchmark::DoNotOptimize(solvers::solve(solvers::SolverKind::Alg1, prob, inst.x0, o).best_value());
  }
}

}  // namespace

BENCHMARK(BM_Dot<false>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_Dot<true>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_Matvec<false>)->Arg(100)->Arg(1000);
BENCHMARK(BM_Matvec<true>)->Arg(100)->Arg(1000);
BENCHMARK(BM_MatvecT<false>)->Arg(100)->Arg(1000);
BENCHMARK(BM_MatvecT<true>)->Arg(100)->Arg(1000);
BENCHMARK(BM_Gram<false>)->Arg(100)->Arg(300);
BENCHMARK(BM_Gram<true>)->Arg(100)->Arg(300);
BENCHMARK(BM_Alg1LogReg)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
