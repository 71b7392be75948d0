#include <benchmark/benchmark.h>

#include "gaugewalk/walk.hpp"

using namespace gaugewalk;

namespace {

walk::CoupledWalk landau_walk(int L) {
  LatticeWindow w({L, L}, Boundary::torus);
  forms::DiscreteForm A(w, 1);
  for (std::size_t x = 0; x < w.size(); ++x) A.set(x, 2, Angle::turns(w.coord(x, 0), L));
  walk::WalkDecomposition dec;
  dec.factors = {walk::Coin::hadamard(), walk::Subshift{1}, walk::Coin::hadamard(), walk::Subshift{2}};
  return walk::minimal_couple(dec, gauge::TranslationSystem(A));
}

void BM_Step(benchmark::State& state) {
  const walk::CoupledWalk cw = landau_walk(static_cast<int>(state.range(0)));
  walk::Vector psi = walk::Vector::Zero(cw.state_size());
  psi(0) = 1.0;
  long t = 0;
  for (auto _ : state) {
    psi = cw.step(psi, t++);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cw.state_size()));
}
BENCHMARK(BM_Step)->Arg(16)->Arg(64)->Arg(256);

void BM_ToMatrix(benchmark::State& state) {
  const walk::CoupledWalk cw = landau_walk(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cw.to_matrix(0).data());
}
BENCHMARK(BM_ToMatrix)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ElectricEvolve(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  LatticeWindow w({2 * steps + 3}, std::vector<Boundary>{Boundary::open}, {-(steps + 1)});
  const walk::ElectricPair pair = walk::electric_pair(walk::Coin::hadamard(), Angle::turns(1, 3), w, steps);
  walk::Vector c = walk::Vector::Zero(2);
  c(0) = 1.0;
  const walk::WalkState init = walk::WalkState::localized(w, 2, Site{steps + 1}, c);
  for (auto _ : state) benchmark::DoNotOptimize(walk::evolve(pair.temporal_gauge, init, steps).norm_drift);
}
BENCHMARK(BM_ElectricEvolve)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
