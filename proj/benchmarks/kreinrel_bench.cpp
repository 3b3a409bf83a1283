#include "kreinrel/generators.hpp"
#include "kreinrel/similarity.hpp"
#include "kreinrel/suites.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace kreinrel;

LinearRelation instance(Index dim, Index defect, std::uint64_t seed = 1) {
  InstanceSpec spec;
  spec.seed = seed;
  spec.dim = dim;
  spec.p = dim / 2;
  spec.q = dim - spec.p;
  spec.defect = defect;
  return gen_symmetric(spec);
}

void BM_Intersect(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(3);
  const Subspace a = span(rng.gaussian(n, n / 2 + 1)), b = span(rng.gaussian(n, n / 2 + 1));
  for (auto _ : state) benchmark::DoNotOptimize(intersect(a, b));
}
BENCHMARK(BM_Intersect)->Arg(8)->Arg(16)->Arg(32);

void BM_Adjoint(benchmark::State& state) {
  const LinearRelation t = instance(state.range(0), state.range(0) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(adjoint(t));
}
BENCHMARK(BM_Adjoint)->Arg(4)->Arg(8)->Arg(16);

void BM_DefectNumbers(benchmark::State& state) {
  const LinearRelation t = instance(state.range(0), state.range(0) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(defect_numbers(t));
}
BENCHMARK(BM_DefectNumbers)->Arg(4)->Arg(8)->Arg(16);

void BM_Weyl(benchmark::State& state) {
  const Index dim = state.range(0);
  const BoundaryTriple tr = gen_triple(instance(dim, dim / 2), 5);
  const cplx z(0.5, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(weyl(tr, z));
}
BENCHMARK(BM_Weyl)->Arg(4)->Arg(8);

void BM_ExampleGolden(benchmark::State& state) {
  for (auto _ : state) {
    const BoundaryTriple tr = c4_example_triple();
    benchmark::DoNotOptimize(inverse_boundary(tr));
    benchmark::DoNotOptimize(weyl_matrix(tr, cplx(1, 2)));
  }
}
BENCHMARK(BM_ExampleGolden);

void BM_Reconstruct(benchmark::State& state) {
  const BoundaryTriple a = c4_example_triple();
  const KreinSpace& h = a.space();
  const BoundaryTriple b = transport(a, diagonal_lift(gen_standard_unitary(9, h, h), h, h).matrix(), h);
  const auto grid = default_grid();
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_similarity(a, b, grid));
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
