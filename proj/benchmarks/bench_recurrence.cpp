#include <benchmark/benchmark.h>

#include "atem/spectrum.hpp"
#include "atem/wavefunction.hpp"

namespace {

atem::ProblemSpec quartic(int bits) {
  std::vector<atem::Real> v{atem::Real(0, bits), atem::Real(0, bits), atem::Real(1, bits), atem::Real(0, bits),
                            atem::Real::from_string("0.1", bits)};
  return atem::ProblemSpec::make(atem::Poly(std::move(v)),
                                 atem::AnsatzExponent::gaussian_quartic(atem::Real(4, bits), atem::Real(0, bits)));
}

// One channel evaluation: the unit of work of every scan and bisection step.
void BM_Recurrence(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const int bits = static_cast<int>(state.range(1));
  const auto seed = atem::derive_seed(quartic(bits));
  const atem::Real energy = atem::Real::from_string("1.0652855", bits);
  for (auto _ : state) benchmark::DoNotOptimize(atem::run_recurrence(seed, energy, depth));
}
BENCHMARK(BM_Recurrence)
    ->ArgsProduct({{30, 60, 120}, {128, 256, 512}})
    ->Unit(benchmark::kMillisecond);

void BM_RefineGroundState(benchmark::State& state) {
  const auto seed = atem::derive_seed(quartic(256));
  const atem::Bracket bracket{atem::Real::from_string("1.0"), atem::Real::from_string("1.1")};
  const atem::Real tol = atem::Real::from_string("1e-20");
  for (auto _ : state) {
    benchmark::DoNotOptimize(atem::refine_root(seed, bracket, static_cast<int>(state.range(0)),
                                               atem::Channel::parity_even, tol));
  }
}
BENCHMARK(BM_RefineGroundState)->Arg(58)->Arg(118)->Unit(benchmark::kMillisecond);

void BM_NormalizeSeries(benchmark::State& state) {
  const auto series = atem::build_series(quartic(256), atem::Real::from_string("1.065285509543717701"), 118, 17,
                                         atem::SeriesParity::even);
  const atem::Real tol = atem::Real::from_string("1e-20");
  for (auto _ : state) benchmark::DoNotOptimize(atem::normalize(series, tol));
}
BENCHMARK(BM_NormalizeSeries)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
