#include <benchmark/benchmark.h>

#include "dtnembed/assembly.hpp"
#include "dtnembed/oracle.hpp"
#include "dtnembed/solver.hpp"

using namespace dtnembed;

namespace {
const CompositeDomain kDomain = make_domain(1.0, 1.5);
}

// Construction caches every κ-independent integral.
static void BM_AssemblerSetup(benchmark::State& state) {
  const int nm = static_cast<int>(state.range(0));
  const BasisSpec spec{Parity::Even, 1.0, 1.0, nm, nm};
  for (auto _ : state) {
    Assembler assembler(spec, kDomain);
    benchmark::DoNotOptimize(assembler.gram().data());
  }
}
BENCHMARK(BM_AssemblerSetup)->Arg(5)->Arg(15)->Arg(25)->Unit(benchmark::kMillisecond);

static void BM_AssembleAtKappa(benchmark::State& state) {
  const int nm = static_cast<int>(state.range(0));
  const Method method = state.range(1) == 0 ? Method::DtN : Method::NtD;
  const Assembler assembler(BasisSpec{Parity::Even, 1.0, 1.0, nm, nm}, kDomain);
  for (auto _ : state) {
    auto pair = assembler.assemble(method, 2.0611);
    benchmark::DoNotOptimize(pair.lambda.data());
  }
}
BENCHMARK(BM_AssembleAtKappa)->Args({15, 0})->Args({15, 1})->Args({25, 0})->Args({25, 1})->Unit(benchmark::kMillisecond);

static void BM_SolveGeneralized(benchmark::State& state) {
  const int nm = static_cast<int>(state.range(0));
  const Assembler assembler(BasisSpec{Parity::Odd, 1.0, 1.0, nm, nm}, kDomain);
  const auto pair = assembler.assemble(Method::DtN, 3.4507);
  for (auto _ : state) {
    auto solution = solve_generalized(pair);
    benchmark::DoNotOptimize(solution.values.data());
  }
}
BENCHMARK(BM_SolveGeneralized)->Arg(5)->Arg(15)->Arg(25)->Unit(benchmark::kMillisecond);

static void BM_IterateMode(benchmark::State& state) {
  const Assembler assembler(BasisSpec{Parity::Even, 1.0, 1.0, 15, 15}, kDomain);
  for (auto _ : state) {
    auto run = iterate_mode(assembler, Method::DtN, 2.0116);
    benchmark::DoNotOptimize(run.estimate.kappa);
  }
}
BENCHMARK(BM_IterateMode)->Unit(benchmark::kMillisecond);

static void BM_FdmLowestModes(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const FdmProblem problem = make_composite_problem(kDomain, h);
  for (auto _ : state) {
    auto modes = fdm_eigen(problem, 4);
    benchmark::DoNotOptimize(modes.data());
  }
}
BENCHMARK(BM_FdmLowestModes)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
