#include <benchmark/benchmark.h>

#include <random>

#include "gaugewalk/forms.hpp"
#include "gaugewalk/gauge.hpp"

using namespace gaugewalk;

namespace {

forms::DiscreteForm random_potential(const LatticeWindow& w, bool exact) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(0, 11);
  std::uniform_real_distribution<double> rad(0.0, kTwoPi);
  forms::DiscreteForm A(w, 1);
  for (forms::Mask m : A.masks())
    for (std::size_t x = 0; x < w.size(); ++x)
      if (A.has_cell(x, m)) A.set(x, m, exact ? Angle::turns(num(rng), 12) : Angle::radians(rad(rng)));
  return A;
}

LatticeWindow cube(int dims, int L) { return LatticeWindow(std::vector<int>(dims, L), Boundary::open); }

void BM_ExteriorDerivative(benchmark::State& state) {
  const auto A = random_potential(cube(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))),
                                  state.range(2) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(forms::exterior_derivative(A));
}
BENCHMARK(BM_ExteriorDerivative)->Args({2, 64, 0})->Args({2, 64, 1})->Args({4, 8, 0})->Args({4, 8, 1});

void BM_SolvePotential(benchmark::State& state) {
  const auto F = forms::exterior_derivative(
      random_potential(cube(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))), false));
  for (auto _ : state) benchmark::DoNotOptimize(forms::solve_potential(F));
}
BENCHMARK(BM_SolvePotential)->Args({2, 64})->Args({3, 16})->Args({4, 6})->Unit(benchmark::kMillisecond);

void BM_GaugeEquivalence(benchmark::State& state) {
  const LatticeWindow w = cube(3, static_cast<int>(state.range(0)));
  const gauge::TranslationSystem T(random_potential(w, false));
  const gauge::TranslationSystem S(forms::solve_potential(gauge::plaquette_field(T)));
  for (auto _ : state) benchmark::DoNotOptimize(gauge::gauge_equivalence(T, S).equivalent);
}
BENCHMARK(BM_GaugeEquivalence)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
