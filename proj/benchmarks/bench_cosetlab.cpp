#include "cosetlab/cosets.hpp"
#include "cosetlab/geometry.hpp"
#include "cosetlab/haar.hpp"
#include "cosetlab/hypergroup_exact.hpp"

#include <benchmark/benchmark.h>

using namespace cosetlab;

namespace {

void BM_HaarOrthogonal(benchmark::State& state) {
  RandomStream rng(1, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_orthogonal(n, rng));
}
BENCHMARK(BM_HaarOrthogonal)->Arg(16)->Arg(64)->Arg(256);

void BM_HaarUnitary(benchmark::State& state) {
  RandomStream rng(2, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(n, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(16)->Arg(64)->Arg(256);

// Draw plus distance estimate, the inner loop of a concentration experiment.
void BM_EstimateDistance(benchmark::State& state, FamilyKind kind) {
  RandomStream rng(3, 0);
  const BlockSpec spec{1, 1, static_cast<int>(state.range(0)), 1};
  const BlockSpec small = spec.with_tail(0);
  const BlockMatrix g(haar_unitary(small.dim(), rng), small);
  const BlockMatrix h(haar_unitary(small.dim(), rng), small);
  const GroupFamily family{kind, spec};
  const auto target = circ_n(g, h, spec, kind);
  for (auto _ : state) {
    const auto draw = draw_tau_tilde(g, h, family, rng);
    benchmark::DoNotOptimize(estimate_distance(draw, g, h, target, SolverOptions{}, rng));
  }
}
BENCHMARK_CAPTURE(BM_EstimateDistance, orthogonal, FamilyKind::unitary_orthogonal)->Arg(8)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_EstimateDistance, conjugation, FamilyKind::unitary_conjugation)->Arg(8)->Arg(64)->Arg(256);

void BM_SymMembership(benchmark::State& state) {
  RandomStream rng(4, 0);
  const int n_tail = static_cast<int>(state.range(0));
  const BlockSpec spec{2, 2, n_tail, 2};
  const GroupFamily family{FamilyKind::symmetric, spec};
  const auto r = uniform_permutation(spec.dim(), rng);
  const CosetTarget target{BlockMatrix(r, spec), family};
  for (auto _ : state) {
    const auto x = uniform_permutation(spec.dim(), rng);
    benchmark::DoNotOptimize(sym_membership(x, target));
  }
}
BENCHMARK(BM_SymMembership)->Arg(2)->Arg(5)->Arg(10);

void BM_ExactConvolution(benchmark::State& state) {
  const int n_tail = static_cast<int>(state.range(0));
  const BlockSpec spec{1, 1, n_tail, 1};
  const GroupFamily family{FamilyKind::symmetric, spec};
  const auto g = Permutation::parse("(1 2)");
  for (auto _ : state) benchmark::DoNotOptimize(exact_convolution(g, g, family));
}
BENCHMARK(BM_ExactConvolution)->Arg(3)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
