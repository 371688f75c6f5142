// Copyright 2026 The cdsopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <random>

#include <benchmark/benchmark.h>

#include "cdsopt/combisolve.h"
#include "cdsopt/derivative.h"
#include "cdsopt/refrigeration.h"
#include "cdsopt/surrogate.h"

namespace cdsopt {
namespace {

Vector RandomEntries(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector g(m);
  for (int i = 0; i < m; ++i) g[i] = u(rng);
  return g;
}

void BM_Linearize(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Scenario sc = CaseOneScenario(m, 1);
  const SystemSpec spec = StepSystem(sc, sc.params.x0);
  const TimeGrid grid(spec.horizon, 200);
  const BinaryVector bar(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Linearize(spec, bar, grid));
  }
}
BENCHMARK(BM_Linearize)->Arg(20)->Arg(100)->Arg(200);

void BM_Derivative(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Scenario sc = CaseOneScenario(m, 1);
  const SystemSpec spec = StepSystem(sc, sc.params.x0);
  const Linearization lin =
      Linearize(spec, BinaryVector(m), TimeGrid(spec.horizon, 200));
  const DerivativeKind kind = state.range(1) ? DerivativeKind::kNonstandard
                                             : DerivativeKind::kStandard;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeDerivative(kind, spec, lin));
  }
}
BENCHMARK(BM_Derivative)->ArgsProduct({{20, 100, 200}, {0, 1}});

void BM_SolveTuBlock(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const IntMatrix q = BlockTuMatrix(m);
  IntVector r = IntVector::Ones(q.rows());
  r[q.rows() - 1] = m / 4;
  const Vector g = RandomEntries(m, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveTu(g, q, r));
  }
}
BENCHMARK(BM_SolveTuBlock)->Arg(20)->Arg(100)->Arg(200);

void BM_SolveKnapsack(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Vector g = RandomEntries(m, 3);
  const Vector w = RandomEntries(m, 4).cwiseAbs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveKnapsack(g, w, 0.3 * w.sum()));
  }
}
BENCHMARK(BM_SolveKnapsack)->Arg(20)->Arg(1000);

void BM_BruteForceSurrogate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Scenario sc = CaseOneScenario(20, 1);
  const SystemSpec spec = StepSystem(sc, sc.params.x0);
  const PayoffOracle oracle =
      MakePayoffOracle(spec, TimeGrid(spec.horizon, 200), Scheme::kEuler);
  const ConstraintSet band = L0Band{0, m / 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveBruteForce(oracle.payoff, band, 20));
  }
}
BENCHMARK(BM_BruteForceSurrogate)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_RecedingHorizon(benchmark::State& state) {
  const Scenario sc = CaseTwoScenario(static_cast<int>(state.range(0)), 1);
  HorizonOptions options;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunRecedingHorizon(sc, options));
  }
}
BENCHMARK(BM_RecedingHorizon)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cdsopt

BENCHMARK_MAIN();
