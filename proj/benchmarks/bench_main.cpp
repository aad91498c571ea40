#include <benchmark/benchmark.h>

#include <random>

#include "funspace/besov.hpp"
#include "funspace/compact.hpp"
#include "funspace/lorentz.hpp"
#include "funspace/rearrange.hpp"

using namespace funspace;

namespace {

SampledFunction random_function(std::size_t cells, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(cells);
  for (auto& x : v) x = u(rng);
  return SampledFunction(Box::interval(0, 1), {cells}, std::move(v));
}

void BM_Rearrangement(benchmark::State& state) {
  const auto f = random_function(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rearrangement(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rearrangement)->RangeMultiplier(8)->Range(64, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_LorentzNormClosedForm(benchmark::State& state) {
  const auto prof = rearrangement(random_function(static_cast<std::size_t>(state.range(0)), 2));
  const LorentzSpec spec(Param::exact(2), Param::exact(3), PowerLogWeight(1.0, Param::exact(1, 4), Param::exact(1), 1.0), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_quasinorm(spec, prof));
}
BENCHMARK(BM_LorentzNormClosedForm)->Arg(256)->Arg(4096);

void BM_LorentzNormQuadrature(benchmark::State& state) {
  const auto prof = rearrangement(random_function(static_cast<std::size_t>(state.range(0)), 3));
  const LorentzSpec spec(Param::exact(2), Param::exact(3), PowerLogWeight(1.0, Param::exact(1, 4), Param::exact(-3, 2), 1.0), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_quasinorm(spec, prof));
}
BENCHMARK(BM_LorentzNormQuadrature)->Arg(256)->Arg(4096);

void BM_ModulusLp(benchmark::State& state) {
  const auto f = SampledFunction::from_centers(Box::interval(-1, 3), {static_cast<std::size_t>(state.range(0))},
                                               [](std::span<const double> x) { return (x[0] >= 0 && x[0] < 1) ? 1.0 : 0.0; });
  for (auto _ : state) benchmark::DoNotOptimize(modulus_table_lp(f, 1.0, 1.0));
}
BENCHMARK(BM_ModulusLp)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const BesovSpec src(Param::exact(1, 2), Param::exact(1), Param::exact(2), 1);
  const LorentzSpec tgt(Param::exact(2), Param::exact(2), PowerLogWeight(1.0, Param::exact(0), Param::exact(-1), 1.0), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify_embedding(src, tgt));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
