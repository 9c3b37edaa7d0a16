// Copyright 2026 The qcomb Authors
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

#include "qcomb/channel.hpp"
#include "qcomb/comb.hpp"
#include "qcomb/controlled.hpp"
#include "qcomb/controllization.hpp"
#include "qcomb/random.hpp"
#include "qcomb/randomization.hpp"

namespace {

using namespace qcomb;

void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(1);
  const ComplexMatrix m = random_density(d * d * d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(m, {d, d, d}, {0, 2}));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(8);

void BM_HermitianEig(benchmark::State& state) {
  Rng rng = make_rng(2);
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(16)->Arg(64)->Arg(256);

void BM_ChoiToKraus(benchmark::State& state) {
  Rng rng = make_rng(3);
  const auto d = static_cast<std::size_t>(state.range(0));
  const ChoiMatrix j = kraus_to_choi(KrausSet(random_kraus(d, d, d, rng)));
  for (auto _ : state) benchmark::DoNotOptimize(choi_to_orthogonal_kraus(j));
}
BENCHMARK(BM_ChoiToKraus)->Arg(2)->Arg(4)->Arg(8);

void BM_CombCheckChoi(benchmark::State& state) {
  const CombChoi j =
      kraus_to_comb_choi(random_circuit_comb(static_cast<std::size_t>(state.range(0)), 2, 2, 4));
  for (auto _ : state) benchmark::DoNotOptimize(check_comb_choi(j));
}
BENCHMARK(BM_CombCheckChoi)->Arg(1)->Arg(2);

void BM_CombCheckKraus(benchmark::State& state) {
  const CombKraus k = random_circuit_comb(static_cast<std::size_t>(state.range(0)), 2, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(comb_kraus_conditions(k));
}
BENCHMARK(BM_CombCheckKraus)->Arg(1)->Arg(2)->Arg(3);

void BM_Multicopy(benchmark::State& state) {
  Rng rng = make_rng(5);
  const ComplexMatrix v = haar_unitary(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(multicopy_controllization(v));
}
BENCHMARK(BM_Multicopy)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RandomizedAverage(benchmark::State& state) {
  const ComplexMatrix h = pauli(1) * 0.6 + pauli(3) * 0.3;
  const auto set = state.range(1) == 0 ? pauli_set() : clifford_set();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        randomized_controllization(h, 1.0, static_cast<std::size_t>(state.range(0)), set));
}
BENCHMARK(BM_RandomizedAverage)
    ->Args({64, 0})
    ->Args({1024, 0})
    ->Args({64, 1})
    ->Unit(benchmark::kMillisecond);

void BM_RandomizedSampled(benchmark::State& state) {
  const ComplexMatrix h = pauli(1) * 0.6 + pauli(3) * 0.3;
  RandomizationOptions opts;
  opts.mode = RandomizationMode::sampled;
  opts.trials = 1000;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(randomized_controllization(h, 1.0, 32, pauli_set(), opts));
}
BENCHMARK(BM_RandomizedSampled)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SwitchFit(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(switch_vs_controlled({0.8366600265340756, 0.5477225575051661, 0, 0}));
}
BENCHMARK(BM_SwitchFit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
