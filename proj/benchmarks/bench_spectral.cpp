#include <benchmark/benchmark.h>

#include "gaugewalk/spectral.hpp"

using namespace gaugewalk;

namespace {

walk::WalkDecomposition magnetic_hadamard() {
  walk::WalkDecomposition dec;
  dec.factors = {walk::Coin::hadamard(), walk::Subshift{1}, walk::Coin::hadamard(), walk::Subshift{2}};
  return dec;
}

void BM_BlochMatrix(benchmark::State& state) {
  const auto dec = magnetic_hadamard();
  const std::int64_t q = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::bloch_matrix(dec, 1, q, 0.3, 1.1).entries.data());
}
BENCHMARK(BM_BlochMatrix)->Arg(3)->Arg(12)->Arg(20);

void BM_UnitaryEigenvalues(benchmark::State& state) {
  const auto dec = magnetic_hadamard();
  const auto B = spectral::bloch_matrix(dec, 1, state.range(0), 0.3, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::unitary_eigenvalues(B.entries));
  state.SetComplexityN(2 * state.range(0));
}
BENCHMARK(BM_UnitaryEigenvalues)->RangeMultiplier(2)->Range(2, 32)->Complexity(benchmark::oNCubed);

void BM_SpectrumSweep(benchmark::State& state) {
  const auto dec = magnetic_hadamard();
  for (auto _ : state) benchmark::DoNotOptimize(spectral::spectrum_sweep(dec, 1, state.range(0), 16, 1).band_count);
}
BENCHMARK(BM_SpectrumSweep)->Arg(3)->Arg(7)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Butterfly(benchmark::State& state) {
  const auto dec = magnetic_hadamard();
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::butterfly(dec, static_cast<int>(state.range(0)), 8, 256, 1, 1).rows.size());
}
BENCHMARK(BM_Butterfly)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
