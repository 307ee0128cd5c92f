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

#include <filesystem>
#include <string>

#include "stairsynth/circuit.hpp"

namespace stairsynth {

inline constexpr int kCheckpointVersion = 1;

/// Checkpoint JSON: version, n_sites, layout "stair-ascending", seed_history,
/// and per layer a list of {site, latent, unitary} with 16 row-major [re, im]
/// pairs each. Loading recomputes every projection and rejects the file if a
/// stored unitary differs from it by more than 1e-10.
std::string circuit_to_json(const StairCircuit& circuit);
StairCircuit circuit_from_json(const std::string& text);

void save_circuit(const StairCircuit& circuit, const std::filesystem::path& path);
StairCircuit load_circuit(const std::filesystem::path& path);

}  // namespace stairsynth
