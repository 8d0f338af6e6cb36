// Copyright 2026 The chi2cavity Authors
//
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

#include <benchmark/benchmark.h>

#include "chi2cavity/amplitude.hpp"
#include "chi2cavity/dynamics.hpp"
#include "chi2cavity/hamiltonian.hpp"
#include "chi2cavity/observables.hpp"

namespace {

using namespace chi2;

SystemParams dip_point() {
  SystemParams p;
  p.g = optimal_g(1.0, 1.0, 0.05);
  p.drive_strength = 0.05;
  return p;
}

Liouvillian model(const SystemParams& p, int na_cut, int nb_cut) {
  const FockBasis basis(na_cut, nb_cut);
  return build_liouvillian(build_h_eff(p, basis), annihilator_a(basis), annihilator_b(basis), p.kappa1, p.kappa2);
}

void BM_BuildLiouvillian(benchmark::State& state) {
  const auto na = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(model(dip_point(), na, na / 2));
}
BENCHMARK(BM_BuildLiouvillian)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
  const auto na = static_cast<int>(state.range(0));
  const auto method = static_cast<SteadyStateMethod>(state.range(1));
  const Liouvillian l = model(dip_point(), na, na / 2);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l, method));
}
BENCHMARK(BM_SteadyState)
    ->ArgsProduct({{6}, {static_cast<int>(SteadyStateMethod::DenseLU), static_cast<int>(SteadyStateMethod::SparseLU),
                         static_cast<int>(SteadyStateMethod::Iterative)}})
    ->Args({12, static_cast<int>(SteadyStateMethod::Iterative)})
    ->Unit(benchmark::kMillisecond);

void BM_PhotonStatistics(benchmark::State& state) {
  const DensityMatrix rho = steady_state(model(dip_point(), 6, 3));
  for (auto _ : state) benchmark::DoNotOptimize(photon_statistics(rho));
}
BENCHMARK(BM_PhotonStatistics)->Unit(benchmark::kMicrosecond);

void BM_Evolve(benchmark::State& state) {
  const Liouvillian l = model(dip_point(), 6, 3);
  const DensityMatrix vac = DensityMatrix::fock(l.basis, 0, 0);
  const double dt = max_stable_step(l);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(vac, l, 1000 * dt, dt));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

void BM_SteadyAmplitudes(benchmark::State& state) {
  const SystemParams p = dip_point();
  for (auto _ : state) benchmark::DoNotOptimize(steady_amplitudes(p));
}
BENCHMARK(BM_SteadyAmplitudes)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
