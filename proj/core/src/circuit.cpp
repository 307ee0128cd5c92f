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

#include "stairsynth/circuit.hpp"

#include <fmt/format.h>

#include "stairsynth/errors.hpp"
#include "stairsynth/random.hpp"

namespace stairsynth {
namespace {

constexpr std::uint64_t kInitStream = 0x1a7e;
constexpr std::uint64_t kAppendStream = 0x1a7f;

ComplexTensor gaussian_matrix(ComplexNormalSampler& sample) {
  ComplexTensor m(Shape{4, 4});
  for (auto& z : m.data()) z = sample();
  return m;
}

}  // namespace

StairCircuit::StairCircuit(std::size_t n_sites, std::vector<std::vector<ComplexTensor>> latents,
                           std::vector<std::uint64_t> seed_history)
    : n_sites_(n_sites), seed_history_(std::move(seed_history)) {
  if (n_sites < 2) throw ArgumentError("a circuit needs at least 2 sites");
  for (std::size_t l = 0; l < latents.size(); ++l) {
    if (latents[l].size() != n_sites - 1)
      throw DimensionError(fmt::format("layer {} has {} gates, expected {}", l, latents[l].size(), n_sites - 1));
    std::vector<LatentGate> gates;
    for (std::size_t s = 0; s < latents[l].size(); ++s) {
      if (latents[l][s].shape() != Shape{4, 4})
        throw DimensionError(fmt::format("latent gate (layer {}, site {}) must be 4x4", l, s));
      gates.push_back({std::move(latents[l][s]), s, l});
    }
    factors_.push_back(project_layer(l, gates));
    layers_.push_back(std::move(gates));
  }
}

std::vector<PolarFactors> StairCircuit::project_layer(std::size_t layer, const std::vector<LatentGate>& gates) {
  std::vector<PolarFactors> out;
  out.reserve(gates.size());
  for (const auto& g : gates) {
    try {
      out.push_back(polar_factors(g.matrix));
    } catch (const DegenerateProjectionError& e) {
      throw DegenerateProjectionError(fmt::format("layer {}, site {}: {}", layer, g.site, e.what()));
    }
  }
  return out;
}

std::vector<ComplexTensor> StairCircuit::layer_latents(std::size_t layer) const {
  std::vector<ComplexTensor> out;
  for (const auto& g : layers_.at(layer)) out.push_back(g.matrix);
  return out;
}

StairCircuit StairCircuit::with_layer(std::size_t layer, std::vector<ComplexTensor> latents) const {
  if (layer >= layers_.size()) throw ArgumentError(fmt::format("layer {} out of range", layer));
  if (latents.size() != n_sites_ - 1) throw DimensionError("replacement layer has the wrong gate count");
  StairCircuit out = *this;
  for (std::size_t s = 0; s < latents.size(); ++s) {
    if (latents[s].shape() != Shape{4, 4}) throw DimensionError("latent gates must be 4x4");
    out.layers_[layer][s].matrix = std::move(latents[s]);
  }
  out.factors_[layer] = project_layer(layer, out.layers_[layer]);
  return out;
}

StairCircuit StairCircuit::with_appended_layer(std::vector<ComplexTensor> latents, std::uint64_t seed) const {
  if (latents.size() != n_sites_ - 1) throw DimensionError("appended layer has the wrong gate count");
  StairCircuit out = *this;
  const std::size_t layer = layers_.size();
  std::vector<LatentGate> gates;
  for (std::size_t s = 0; s < latents.size(); ++s) {
    if (latents[s].shape() != Shape{4, 4}) throw DimensionError("latent gates must be 4x4");
    gates.push_back({std::move(latents[s]), s, layer});
  }
  out.factors_.push_back(project_layer(layer, gates));
  out.layers_.push_back(std::move(gates));
  out.seed_history_.push_back(seed);
  return out;
}

StairCircuit init_first_layer(std::size_t n_sites, std::uint64_t seed) {
  if (n_sites < 2) throw ArgumentError("a circuit needs at least 2 sites");
  ComplexNormalSampler sample(seed, kInitStream);
  std::vector<ComplexTensor> layer;
  for (std::size_t s = 0; s + 1 < n_sites; ++s) layer.push_back(gaussian_matrix(sample));
  return StairCircuit(n_sites, {std::move(layer)}, {seed});
}

StairCircuit append_identity_layer(const StairCircuit& circuit, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw ArgumentError("identity-layer perturbation must be positive");
  ComplexNormalSampler sample(seed, kAppendStream);
  std::vector<ComplexTensor> layer;
  for (std::size_t s = 0; s < circuit.gates_per_layer(); ++s)
    layer.push_back(ComplexTensor::identity(4) + gaussian_matrix(sample) * Complex{epsilon, 0.0});
  return circuit.with_appended_layer(std::move(layer), seed);
}

StairCircuit identity_circuit(std::size_t n_sites, std::size_t n_layers) {
  if (n_sites < 2) throw ArgumentError("a circuit needs at least 2 sites");
  std::vector<std::vector<ComplexTensor>> latents(n_layers,
                                                  std::vector<ComplexTensor>(n_sites - 1, ComplexTensor::identity(4)));
  return StairCircuit(n_sites, std::move(latents));
}

std::vector<ComplexTensor> gate_unitaries(const StairCircuit& circuit) {
  std::vector<ComplexTensor> out;
  for (std::size_t l = 0; l < circuit.n_layers(); ++l)
    for (std::size_t s = 0; s < circuit.gates_per_layer(); ++s) out.push_back(circuit.unitary(l, s));
  return out;
}

CircuitApplication apply_layers_mps(const StairCircuit& circuit, MatrixProductState psi, std::size_t first,
                                    std::size_t last, std::size_t chi_max, double cutoff) {
  if (psi.n_sites() != circuit.n_sites())
    throw ArgumentError(fmt::format("state has {} sites, circuit has {}", psi.n_sites(), circuit.n_sites()));
  if (first > last || last > circuit.n_layers()) throw ArgumentError("layer range out of bounds");
  CircuitApplication out{std::move(psi), 0.0, {}};
  for (std::size_t l = first; l < last; ++l) {
    for (std::size_t s = 0; s < circuit.gates_per_layer(); ++s) {
      auto step = apply_two_qubit_gate(std::move(out.state), circuit.unitary(l, s), s, chi_max, cutoff);
      out.state = std::move(step.state);
      out.truncation_error += step.truncation_error;
      out.kept.push_back(step.kept);
    }
  }
  return out;
}

CircuitApplication apply_circuit_mps(const StairCircuit& circuit, MatrixProductState psi0, std::size_t chi_max,
                                     double cutoff) {
  return apply_layers_mps(circuit, std::move(psi0), 0, circuit.n_layers(), chi_max, cutoff);
}

CircuitApplication apply_circuit_mps_replay(const StairCircuit& circuit, MatrixProductState psi0,
                                            const std::vector<std::size_t>& kept) {
  if (psi0.n_sites() != circuit.n_sites()) throw ArgumentError("state and circuit sizes differ");
  if (kept.size() != circuit.n_layers() * circuit.gates_per_layer())
    throw ArgumentError("replay record does not match the circuit's gate count");
  CircuitApplication out{std::move(psi0), 0.0, {}};
  std::size_t g = 0;
  for (std::size_t l = 0; l < circuit.n_layers(); ++l) {
    for (std::size_t s = 0; s < circuit.gates_per_layer(); ++s, ++g) {
      auto step = apply_two_qubit_gate_keep(std::move(out.state), circuit.unitary(l, s), s, kept[g]);
      out.state = std::move(step.state);
      out.truncation_error += step.truncation_error;
      out.kept.push_back(step.kept);
    }
  }
  return out;
}

ComplexTensor apply_gate_statevector(const ComplexTensor& v, const ComplexTensor& gate, std::size_t site) {
  if (v.rank() != 1) throw RankError("statevector must be rank 1");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < v.size()) ++n;
  if ((std::size_t{1} << n) != v.size()) throw DimensionError("statevector length must be a power of two");
  if (site + 1 >= n) throw ArgumentError(fmt::format("gate site {} out of range for {} qubits", site, n));
  if (gate.shape() != Shape{4, 4}) throw GateError("two-qubit gate must be a 4x4 matrix");
  const std::size_t outer = std::size_t{1} << site;
  const ComplexTensor blocks = v.reshaped({outer, 4, v.size() / (outer * 4)});
  return contract(gate, blocks, {{1, 1}}).permuted({1, 0, 2}).reshaped({v.size()});
}

ComplexTensor apply_circuit_statevector(const StairCircuit& circuit, const ComplexTensor& v) {
  if (circuit.n_sites() > kMaxDenseQubits)
    throw CapacityError(fmt::format("statevector of {} qubits exceeds the {}-qubit guard", circuit.n_sites(),
                                    kMaxDenseQubits));
  if (v.size() != (std::size_t{1} << circuit.n_sites())) throw DimensionError("statevector length must be 2^N");
  ComplexTensor out = v;
  for (std::size_t l = 0; l < circuit.n_layers(); ++l)
    for (std::size_t s = 0; s < circuit.gates_per_layer(); ++s)
      out = apply_gate_statevector(out, circuit.unitary(l, s), s);
  return out;
}

std::uint64_t circuit_param_count(std::size_t n_sites, std::size_t n_layers) {
  if (n_sites < 2) throw ArgumentError("a circuit needs at least 2 sites");
  return 16ULL * (n_sites - 1) * n_layers;
}

CompressionRatio compression_ratio(std::size_t n_sites, std::size_t chi, std::size_t n_layers) {
  const double r0 = static_cast<double>(circuit_param_count(n_sites, 1)) /
                    static_cast<double>(mps_param_count(n_sites, chi));
  return {static_cast<double>(n_layers) * r0, r0};
}

}  // namespace stairsynth
