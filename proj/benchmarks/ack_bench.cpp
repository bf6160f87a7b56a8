// Copyright 2026 The ACK Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <array>

#include <benchmark/benchmark.h>

#include "ack/circuit.hpp"
#include "ack/executor.hpp"
#include "ack/knitting.hpp"
#include "ack/mps.hpp"
#include "ack/qpd.hpp"
#include "ack/rng.hpp"
#include "ack/spin_models.hpp"
#include "ack/tebd.hpp"

namespace {

using namespace ack;

void BM_GateQpd(benchmark::State& state) {
  StreamRng rng(1, 0);
  const Mat4 u = haar_unitary(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gate_qpd(u));
}
BENCHMARK(BM_GateQpd);

void BM_ApplyTwoSite(benchmark::State& state) {
  const int chi = static_cast<int>(state.range(0));
  StreamRng rng(2, 0);
  const Mat4 u = haar_unitary(4, rng);
  auto mps = MatrixProductState::random(12, chi, rng);
  const Truncation trunc{chi, 0.0};
  for (auto _ : state) {
    mps.apply_two_site(u, 5, trunc);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ApplyTwoSite)->Arg(8)->Arg(32)->Arg(64);

void BM_TebdStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = sample_disorder(LatticeGeometry::chain(n), DisorderFamily::longitudinal(2.0), 7);
  const auto plan = trotter_plan(inst, 0.25);
  const auto initial = MatrixProductState::from_product_state(bump_state(inst, n / 2));
  RecordOptions rec;
  rec.heatmaps = false;
  rec.every = 8;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(initial, plan, 8, {64, 1e-10}, rec));
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_TebdStep)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CompressSweep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto target = circuit_to_mps(init_circuit(10, m, CircuitInit::seeded_random, 5));
  auto circ = init_circuit(10, m, CircuitInit::perturbed_identity, 6);
  for (auto _ : state) benchmark::DoNotOptimize(optimize(circ, target, {1, 0.0, {}}));
}
BENCHMARK(BM_CompressSweep)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_KnitExact(benchmark::State& state) {
  const auto full = init_circuit(10, 2, CircuitInit::seeded_random, 8);
  const std::array<int, 1> cuts = {4};
  const auto plan = make_cut_plan(full, cuts);
  const PauliTermList obs = {{1.0, PauliString({{4, 'Z'}, {5, 'Z'}})}};
  for (auto _ : state) benchmark::DoNotOptimize(knit_exact(full, plan, obs));
}
BENCHMARK(BM_KnitExact)->Unit(benchmark::kMillisecond);

void BM_ThresholdSchedule(benchmark::State& state) {
  const auto tasks = two_width_workload();
  const auto workers = default_workers();
  const auto policy = width_threshold_policy(tune_threshold(tasks, workers));
  for (auto _ : state) benchmark::DoNotOptimize(policy(tasks, workers));
}
BENCHMARK(BM_ThresholdSchedule);

}  // namespace

BENCHMARK_MAIN();
