#include <benchmark/benchmark.h>

#include "cayscheme/cayley.hpp"
#include "cayscheme/classalg.hpp"
#include "cayscheme/linalg.hpp"
#include "cayscheme/spectra.hpp"

namespace cs = cayscheme;

static void BM_Eigensystem(benchmark::State& state) {
  cs::FiniteGroup g = cs::group_builtin("heisenberg(3)");
  cs::AssociationScheme s = cs::scheme_from_partition(g, cs::pc_classes(g));
  for (auto _ : state) {
    cs::Eigensystem e = cs::eigensystem_integral(s);
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_Eigensystem)->Unit(benchmark::kMillisecond);

static void BM_CharPolyAdjacency(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  cs::FiniteGroup g = cs::group_builtin("cyclic(" + std::to_string(order) + ")");
  std::vector<int> members;
  for (int x = 1; x < g.n; ++x) members.push_back(x);
  cs::Mat<int64_t> adj =
      cs::cayley_adjacency(g, cs::ConnectionSet::from_members(g, members));
  cs::IntMat m = cs::to_int_mat(adj);
  for (auto _ : state) {
    cs::IntPoly p = cs::char_poly(m);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_CharPolyAdjacency)->Arg(15)->Arg(27)->Arg(45)->Unit(benchmark::kMillisecond);

static void BM_VerifyOdd(benchmark::State& state) {
  cs::FiniteGroup g = cs::group_builtin("semidirect(7,3,2)");
  for (auto _ : state) {
    cs::VerificationReport r = cs::verify_odd_eigenvalue(g);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_VerifyOdd)->Unit(benchmark::kMillisecond);

static void BM_ClassAlgebraModP(benchmark::State& state) {
  cs::FiniteGroup g = cs::group_builtin("heisenberg(3)");
  cs::AssociationScheme s = cs::scheme_from_partition(g, cs::conjugacy_classes(g));
  cs::AxiomReport axioms = cs::verify_scheme_axioms(s);
  uint64_t p = cs::choose_prime(g);
  for (auto _ : state) {
    cs::ModPEigenmatrix pm = cs::conjugacy_eigenmatrix_modp(s, *axioms.numbers, p, 1);
    benchmark::DoNotOptimize(pm);
  }
}
BENCHMARK(BM_ClassAlgebraModP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
