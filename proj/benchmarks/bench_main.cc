// Copyright 2026 The imd Authors
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

#include "imd/analysis.h"
#include "imd/problems.h"
#include "imd/proximal.h"
#include "imd/solver.h"

namespace imd {
namespace {

void BM_MirrorStepEuclideanBox(benchmark::State& state) {
  const ProximalSetup s =
      ProximalSetup::Euclidean(FeasibleSet::Box({-1.0, -1.0}, {1.0, 1.0}));
  Point x({0.1, -0.2});
  const DualVector p({0.3, -0.7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(MirrorStep(s, x, p, 0.05));
  }
}
BENCHMARK(BM_MirrorStepEuclideanBox);

void BM_MirrorStepEntropy(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ProximalSetup s = ProximalSetup::Entropy(n);
  const Point x = ProxCenter(s);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& c : v) c = g(rng);
  const DualVector p(std::move(v));
  for (auto _ : state) {
    benchmark::DoNotOptimize(MirrorStep(s, x, p, 0.1));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MirrorStepEntropy)->RangeMultiplier(8)->Range(3, 3 * 512)->Complexity();

void BM_Solve(benchmark::State& state, const char* name, Variant v) {
  const Problem p = BuildProblem(FindBuiltin(name));
  const double eps = 0.05;
  long iterations = 0;
  for (auto _ : state) {
    const SolveResult r = Solve(p, v, eps);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.output_point);
  }
  state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK_CAPTURE(BM_Solve, p4_weighted, "p4-max-quadratics", Variant::kWeighted);
BENCHMARK_CAPTURE(BM_Solve, p4_adaptive, "p4-max-quadratics", Variant::kAdaptive);
BENCHMARK_CAPTURE(BM_Solve, p6_fixed, "p6-simplex-active", Variant::kFixedBudget);

void BM_StepCertificates(benchmark::State& state) {
  const Problem p = BuildProblem(FindBuiltin("p4-max-quadratics"));
  const SolveResult r = SolveWeighted(p, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        CheckStepInequalities(r, p.reference()->x, p.setup()));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(r.trace.size()));
}
BENCHMARK(BM_StepCertificates);

void BM_EstimateOmega(benchmark::State& state) {
  const Problem p = BuildProblem(FindBuiltin("p3-linear-simplex"));
  const ReferenceOptimum& ref = *p.reference();
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimateOmega(p, ref.x, ref.f, DefaultTauGrid(p)));
  }
}
BENCHMARK(BM_EstimateOmega)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace imd

BENCHMARK_MAIN();
