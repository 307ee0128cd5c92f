// Copyright 2026 The stairsynth Authors
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

#include <benchmark/benchmark.h>

#include <random>

#include "stairsynth/circuit.hpp"
#include "stairsynth/linalg.hpp"
#include "stairsynth/mps.hpp"
#include "stairsynth/optimizer.hpp"
#include "stairsynth/spin_chain.hpp"

namespace stairsynth {
namespace {

ComplexTensor random_tensor(Shape shape, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  ComplexTensor t(std::move(shape));
  for (auto& z : t.data()) z = {normal(gen), normal(gen)};
  return t;
}

void BM_ContractSitePair(benchmark::State& state) {
  const auto chi = static_cast<std::size_t>(state.range(0));
  const ComplexTensor a = random_tensor({chi, 2, chi}, 1), b = random_tensor({chi, 2, chi}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(contract(a, b, {{2, 0}}));
}
BENCHMARK(BM_ContractSitePair)->RangeMultiplier(2)->Range(8, 128);

void BM_TruncatedSvd(benchmark::State& state) {
  const auto chi = static_cast<std::size_t>(state.range(0));
  const ComplexTensor m = random_tensor({2 * chi, 2 * chi}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(truncated_svd(m, chi, 1e-14));
}
BENCHMARK(BM_TruncatedSvd)->RangeMultiplier(2)->Range(8, 128);

void BM_GateApplication(benchmark::State& state) {
  const auto chi = static_cast<std::size_t>(state.range(0));
  const MatrixProductState psi = canonicalize(random_mps(48, chi, 4), 23);
  const ComplexTensor gate = project_to_unitary(random_tensor({4, 4}, 5));
  for (auto _ : state) benchmark::DoNotOptimize(apply_two_qubit_gate(psi, gate, 23, chi, 1e-14));
}
BENCHMARK(BM_GateApplication)->RangeMultiplier(2)->Range(8, 64);

void BM_LayerGradient(benchmark::State& state) {
  const auto chi = static_cast<std::size_t>(state.range(0));
  const MatrixProductState target = random_mps(48, chi, 6);
  const StairCircuit circuit = init_first_layer(48, 7);
  const MatrixProductState psi0 = zero_state(48);
  for (auto _ : state) benchmark::DoNotOptimize(layer_gradient(target, circuit, psi0, 0));
}
BENCHMARK(BM_LayerGradient)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_HamiltonianAction(benchmark::State& state) {
  const SpinChainModel model{ChainKind::kHeisenberg, static_cast<std::size_t>(state.range(0))};
  const std::size_t dim = std::size_t{1} << model.n_sites;
  const ComplexTensor x = random_tensor({dim}, 8);
  std::vector<Complex> y(dim);
  for (auto _ : state) {
    apply_hamiltonian(model, x.data(), y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_HamiltonianAction)->DenseRange(10, 14, 2);

}  // namespace
}  // namespace stairsynth

BENCHMARK_MAIN();
