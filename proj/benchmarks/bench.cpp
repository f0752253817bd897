#include <benchmark/benchmark.h>

#include <cmath>

#include "radsob/corpus.hpp"
#include "radsob/derivcalc.hpp"
#include "radsob/norms.hpp"
#include "radsob/quad.hpp"

using namespace radsob;

namespace {

const Profile& bump() {
  static const Profile f({{1.0, 0, 0.5}, {-0.5, 2, 1.0}});
  return f;
}

void BM_GramMatrix(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(d, n));
}
BENCHMARK(BM_GramMatrix)->Args({3, 4})->Args({5, 6})->Unit(benchmark::kMillisecond);

void BM_PartialExpansion(benchmark::State& state) {
  const auto alphas = enumerate_multi(3, static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto& a : alphas) benchmark::DoNotOptimize(partial_expansion(a));
}
BENCHMARK(BM_PartialExpansion)->Arg(2)->Arg(4);

void BM_PartialDerivative(benchmark::State& state) {
  const RadialField phi(3, bump());
  const RadialDerivatives partials(phi, 4);
  const std::vector<double> x{0.3, -0.4, 0.5};
  const MultiIndex alpha({2, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(partials.partial(alpha, x));
}
BENCHMARK(BM_PartialDerivative);

void BM_Integrate1d(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_1d([](double x) { return std::exp(-x * x) * std::cos(3 * x); }, 0, 4, 1e-12));
  }
}
BENCHMARK(BM_Integrate1d);

void BM_SobolevExactAngular(benchmark::State& state) {
  const RadialField phi(3, bump());
  NormOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_ball_definition(phi, static_cast<int>(state.range(0)), 2, 1, opt));
}
BENCHMARK(BM_SobolevExactAngular)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SobolevMonteCarlo(benchmark::State& state) {
  const RadialField phi(3, bump());
  NormOptions opt;
  opt.method = AngularMethod::MonteCarlo;
  opt.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_ball_definition(phi, 2, 3, 1, opt));
}
BENCHMARK(BM_SobolevMonteCarlo)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_EquivalenceReport(benchmark::State& state) {
  const auto corpus = builtin_corpus();
  EquivalenceParams params;
  for (auto _ : state) benchmark::DoNotOptimize(equivalence_report(corpus, params));
}
BENCHMARK(BM_EquivalenceReport)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
