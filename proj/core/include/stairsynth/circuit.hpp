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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stairsynth/linalg.hpp"
#include "stairsynth/mps.hpp"
#include "stairsynth/tensor.hpp"

namespace stairsynth {

/// Unconstrained 4x4 matrix whose polar projection is the gate on (site, site + 1).
struct LatentGate {
  ComplexTensor matrix;
  std::size_t site = 0;
  std::size_t layer = 0;
};

/// Layers of N - 1 gates on the pairs (0,1), (1,2), ..., (N-2,N-1), applied
/// in that order. Projected unitaries are computed when the value is built.
class StairCircuit {
 public:
  /// latents[layer][site]; every layer needs exactly n_sites - 1 4x4 matrices.
  StairCircuit(std::size_t n_sites, std::vector<std::vector<ComplexTensor>> latents,
               std::vector<std::uint64_t> seed_history = {});

  std::size_t n_sites() const { return n_sites_; }
  std::size_t n_layers() const { return layers_.size(); }
  std::size_t gates_per_layer() const { return n_sites_ - 1; }

  const std::vector<std::vector<LatentGate>>& layers() const { return layers_; }
  const LatentGate& gate(std::size_t layer, std::size_t site) const { return layers_.at(layer).at(site); }
  const ComplexTensor& unitary(std::size_t layer, std::size_t site) const {
    return factors_.at(layer).at(site).unitary;
  }
  const PolarFactors& polar(std::size_t layer, std::size_t site) const { return factors_.at(layer).at(site); }
  std::vector<ComplexTensor> layer_latents(std::size_t layer) const;

  /// Seeds consumed by initialization and every appended layer, in order.
  const std::vector<std::uint64_t>& seed_history() const { return seed_history_; }

  /// Copy with one layer's latents replaced; other layers keep their cached unitaries.
  StairCircuit with_layer(std::size_t layer, std::vector<ComplexTensor> latents) const;
  /// Copy with one more layer at the end.
  StairCircuit with_appended_layer(std::vector<ComplexTensor> latents, std::uint64_t seed) const;

 private:
  StairCircuit() = default;
  static std::vector<PolarFactors> project_layer(std::size_t layer, const std::vector<LatentGate>& gates);

  std::size_t n_sites_ = 0;
  std::vector<std::vector<LatentGate>> layers_;
  std::vector<std::vector<PolarFactors>> factors_;
  std::vector<std::uint64_t> seed_history_;
};

/// One layer whose latents are i.i.d. complex standard normal.
StairCircuit init_first_layer(std::size_t n_sites, std::uint64_t seed);

inline constexpr double kDefaultLayerEpsilon = 0.01;

/// Appends a layer with latents I + epsilon R, R i.i.d. complex standard normal.
StairCircuit append_identity_layer(const StairCircuit& circuit, double epsilon, std::uint64_t seed);

/// Circuit whose latents are all exactly the identity.
StairCircuit identity_circuit(std::size_t n_sites, std::size_t n_layers);

/// Projected unitaries, layer-major.
std::vector<ComplexTensor> gate_unitaries(const StairCircuit& circuit);

struct CircuitApplication {
  MatrixProductState state;
  double truncation_error = 0.0;
  std::vector<std::size_t> kept;  // bond extent chosen at every gate, in application order
};

/// Applies layers [first, last) of the circuit.
CircuitApplication apply_layers_mps(const StairCircuit& circuit, MatrixProductState psi, std::size_t first,
                                    std::size_t last, std::size_t chi_max, double cutoff);

CircuitApplication apply_circuit_mps(const StairCircuit& circuit, MatrixProductState psi0, std::size_t chi_max,
                                     double cutoff);

/// Re-runs the circuit keeping exactly the recorded bond extents at every gate.
CircuitApplication apply_circuit_mps_replay(const StairCircuit& circuit, MatrixProductState psi0,
                                            const std::vector<std::size_t>& kept);

/// Dense 4x4 gate on qubits (site, site + 1) of a 2^N vector, site 0 most significant.
ComplexTensor apply_gate_statevector(const ComplexTensor& v, const ComplexTensor& gate, std::size_t site);

/// Exact dense evolution, same order as apply_circuit_mps. N <= 20.
ComplexTensor apply_circuit_statevector(const StairCircuit& circuit, const ComplexTensor& v);

/// 16 (N - 1) n_layers complex entries.
std::uint64_t circuit_param_count(std::size_t n_sites, std::size_t n_layers);

struct CompressionRatio {
  double r = 0.0;   // n_layers * r0
  double r0 = 0.0;  // one-layer circuit count over the MPS count
};

CompressionRatio compression_ratio(std::size_t n_sites, std::size_t chi, std::size_t n_layers);

}  // namespace stairsynth
