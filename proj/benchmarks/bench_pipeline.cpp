#include "toricdegen/catalog.hpp"
#include "toricdegen/degeneration.hpp"

#include <benchmark/benchmark.h>

using namespace toricdegen;

namespace {

void BM_ClassifyProjectiveSpace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto g = catalog::projective_space_partition(n);
    benchmark::DoNotOptimize(g.classification().semistable);
  }
}
BENCHMARK(BM_ClassifyProjectiveSpace)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_LiftChain(benchmark::State& state) {
  const auto g = catalog::chain_partition(3, state.range(0), 3);
  for (auto _ : state) {
    auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)), CapRequest{});
    benchmark::DoNotOptimize(l.nonsingular);
  }
}
BENCHMARK(BM_LiftChain)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_LatticePoints(benchmark::State& state) {
  const auto p = catalog::standard_simplex(3, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(p.lattice_points().size());
}
BENCHMARK(BM_LatticePoints)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMicrosecond);

void BM_FamilyEquations(benchmark::State& state) {
  const auto g = catalog::chain_partition(3, state.range(0), 3);
  const auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)), CapRequest{});
  for (auto _ : state) benchmark::DoNotOptimize(family_equations(l, 0).points.size());
}
BENCHMARK(BM_FamilyEquations)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_DegenerationReport(benchmark::State& state) {
  const auto g = catalog::projective_space_partition(static_cast<std::size_t>(state.range(0)));
  const auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)));
  for (auto _ : state) benchmark::DoNotOptimize(build_report(l).charts.size());
}
BENCHMARK(BM_DegenerationReport)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
