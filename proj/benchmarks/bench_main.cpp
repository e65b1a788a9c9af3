#include <benchmark/benchmark.h>

#include "bgshrink/bgshrink.hpp"

using namespace bgshrink;

namespace {

Coeffs noise(std::size_t n, std::uint64_t seed) {
  Rng rng(SeedKey{seed}, Stream::test);
  Coeffs c(n);
  for (double& v : c.values) v = rng.normal();
  return c;
}

void BM_MmseShrink(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModelParams params = ModelParams::homoscedastic(n, 0.1, 1.0, 0.5);
  const Coeffs beta = noise(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mmse_shrink(beta, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MmseShrink)->Arg(4096)->Arg(65536);

void BM_MapShrink(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModelParams params = ModelParams::homoscedastic(n, 0.1, 1.0, 0.5);
  const Coeffs beta = noise(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(map_shrink(beta, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MapShrink)->Arg(4096)->Arg(65536);

void BM_Db5RoundTrip(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Dictionary d = Dictionary::db5_2d(side, side, 3);
  const Signal y(noise(side * side, 3).values, Shape{side, side});
  for (auto _ : state) benchmark::DoNotOptimize(d.synthesize(d.analyze(y)));
}
BENCHMARK(BM_Db5RoundTrip)->Arg(64)->Arg(256);

void BM_ExactMmse(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Dictionary d = Dictionary::random_orthogonal(m, 4);
  const exact::DenseDictionary dense = exact::DenseDictionary::from(d);
  const ModelParams params = ModelParams::homoscedastic(m, 0.2, 1.0, 0.5);
  const Coeffs y = noise(m, 5);
  for (auto _ : state) benchmark::DoNotOptimize(exact::exact_mmse(y.view(), dense, params));
}
BENCHMARK(BM_ExactMmse)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EstimateBands(benchmark::State& state) {
  const Dictionary d = Dictionary::db5_2d(256, 256, 3);
  const BandLayout layout = d.band_layout();
  const Coeffs beta = noise(256 * 256, 6);
  const LambdaSchedule schedule = LambdaSchedule::by_level(layout, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_bands(beta, layout, 1.0, schedule));
}
BENCHMARK(BM_EstimateBands)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
