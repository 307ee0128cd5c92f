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

#include "stairsynth/circuit_io.hpp"

#include <fmt/format.h>

#include "io_util.hpp"
#include "json_writer.hpp"
#include "stairsynth/errors.hpp"

namespace stairsynth {
namespace {

constexpr const char* kLayout = "stair-ascending";
constexpr double kUnitaryLoadTolerance = 1e-10;

}  // namespace

std::string circuit_to_json(const StairCircuit& circuit) {
  nlohmann::ordered_json doc;
  doc["version"] = kCheckpointVersion;
  doc["n_sites"] = circuit.n_sites();
  doc["layout"] = kLayout;
  doc["seed_history"] = circuit.seed_history();
  auto& layers = doc["layers"] = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < circuit.n_layers(); ++l) {
    auto layer = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < circuit.gates_per_layer(); ++s) {
      nlohmann::ordered_json gate;
      gate["site"] = s;
      gate["latent"] = detail::complex_array(circuit.gate(l, s).matrix);
      gate["unitary"] = detail::complex_array(circuit.unitary(l, s));
      layer.push_back(std::move(gate));
    }
    layers.push_back(std::move(layer));
  }
  return detail::dump_json(doc, 1) + "\n";
}

StairCircuit circuit_from_json(const std::string& text) {
  const auto doc = detail::parse_json(text, "circuit checkpoint");
  try {
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion)
      throw ArgumentError(fmt::format("checkpoint version {} is not supported (expected {})", version,
                                      kCheckpointVersion));
    if (doc.at("layout").get<std::string>() != kLayout)
      throw ArgumentError(fmt::format("unsupported circuit layout '{}'", doc.at("layout").get<std::string>()));
    const auto n = doc.at("n_sites").get<std::size_t>();
    auto seeds = doc.at("seed_history").get<std::vector<std::uint64_t>>();
    std::vector<std::vector<ComplexTensor>> latents;
    std::vector<std::vector<ComplexTensor>> stored;
    for (const auto& layer : doc.at("layers")) {
      std::vector<ComplexTensor> lat, uni;
      std::size_t expected_site = 0;
      for (const auto& gate : layer) {
        if (gate.at("site").get<std::size_t>() != expected_site++)
          throw ArgumentError("checkpoint gates must be listed in ascending site order");
        lat.push_back(detail::complex_tensor_from_json(gate.at("latent"), {4, 4}));
        uni.push_back(detail::complex_tensor_from_json(gate.at("unitary"), {4, 4}));
      }
      latents.push_back(std::move(lat));
      stored.push_back(std::move(uni));
    }
    StairCircuit circuit(n, std::move(latents), std::move(seeds));
    for (std::size_t l = 0; l < circuit.n_layers(); ++l) {
      for (std::size_t s = 0; s < circuit.gates_per_layer(); ++s) {
        const double err = max_abs_diff(stored[l][s], circuit.unitary(l, s));
        if (!(err <= kUnitaryLoadTolerance))
          throw ArgumentError(fmt::format(
              "stored unitary at layer {}, site {} differs from its projection by {:.3e}", l, s, err));
      }
    }
    return circuit;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(fmt::format("malformed circuit checkpoint: {}", e.what()));
  }
}

void save_circuit(const StairCircuit& circuit, const std::filesystem::path& path) {
  detail::write_text_file(path, circuit_to_json(circuit));
}

StairCircuit load_circuit(const std::filesystem::path& path) {
  return circuit_from_json(detail::read_text_file(path));
}

}  // namespace stairsynth
