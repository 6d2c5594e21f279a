#include <benchmark/benchmark.h>

#include "andovar/andovar.hpp"

using namespace andovar;

namespace {

ContractionPair make_pair(Eigen::Index dim) {
  const GeneratedPair g = generate_pair(PairKind::TriangularCommuting, dim, 42);
  return ContractionPair::make(g.t1, g.t2);
}

}  // namespace

static void BM_Colligation(benchmark::State& state) {
  const ContractionPair p = make_pair(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_colligation(p));
}
BENCHMARK(BM_Colligation)->RangeMultiplier(2)->Range(2, 32);

static void BM_TransferEval(benchmark::State& state) {
  const TransferFunction psi(build_colligation(make_pair(state.range(0))), Direction::Adjoint);
  const Complex z(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(psi(z));
}
BENCHMARK(BM_TransferEval)->RangeMultiplier(2)->Range(2, 32);

static void BM_Dilation(benchmark::State& state) {
  const ContractionPair p = make_pair(state.range(0));
  const Colligation c = build_colligation(p);
  for (auto _ : state) benchmark::DoNotOptimize(build_dilation(p, c, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_Dilation)->Args({4, 50})->Args({4, 200})->Args({8, 100});

static void BM_BoundarySamples(benchmark::State& state) {
  const ContractionPair p = make_pair(state.range(0));
  const VarietyModel m = VarietyModel::from_colligation(build_colligation(p));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_samples(m, 720));
}
BENCHMARK(BM_BoundarySamples)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_VnReport(benchmark::State& state) {
  const ContractionPair p = make_pair(state.range(0));
  const BivariatePolynomial poly = BivariatePolynomial::z1() * BivariatePolynomial::z2() - BivariatePolynomial::z2();
  for (auto _ : state) benchmark::DoNotOptimize(vn_report(p, poly));
}
BENCHMARK(BM_VnReport)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
