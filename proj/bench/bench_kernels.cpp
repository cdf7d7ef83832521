/* Copyright 2026 The pwmelnikov Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference versus OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "pwm/heteroclinic.hpp"
#include "pwm/melnikov.hpp"
#include "pwm/orbits.hpp"

namespace {

const pwm::TwoZoneSystem& block() {
  static const auto sys = pwm::TwoZoneSystem::linear_block(5.0);
  return sys;
}

void BM_SubharmonicSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pwm::subharmonic_M_serial(block(), 5, 1));
}

void BM_SubharmonicParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pwm::subharmonic_M(block(), 5, 1));
}

void BM_HeteroclinicProfileSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pwm::heteroclinic_M_serial(block()));
}

void BM_HeteroclinicProfileParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pwm::heteroclinic_M(block()));
}

void BM_SplittingScanSerial(benchmark::State& state) {
  const auto sys = block().with_epsilon(1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(pwm::find_heteroclinic_serial(sys));
}

void BM_SplittingScanParallel(benchmark::State& state) {
  const auto sys = block().with_epsilon(1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(pwm::find_heteroclinic(sys));
}

const std::vector<double> kRatios{0.0906, 0.0908, 0.091, 0.0912};

void BM_ExistenceSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pwm::existence_curve_serial(block(), 5, 1, kRatios));
}

void BM_ExistenceParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pwm::existence_curve(block(), 5, 1, kRatios));
}

}  // namespace

BENCHMARK(BM_SubharmonicSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubharmonicParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HeteroclinicProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeteroclinicProfileParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SplittingScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplittingScanParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExistenceSerial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_ExistenceParallel)->Unit(benchmark::kMillisecond)->Iterations(1)->UseRealTime();

BENCHMARK_MAIN();
