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

#include "stairsynth/mps.hpp"

namespace stairsynth {

/// MPS file format:
///   {"n_sites": N,
///    "tensors": [{"shape": [l, 2, r], "data": [[re, im], ...]}, ...]}
/// Site tensors are stored row-major over (left, physical, right). Numbers
/// are written with 17 significant digits, so write -> read -> write is
/// byte-identical and the doubles round-trip exactly.
std::string mps_to_json(const MatrixProductState& psi);
MatrixProductState mps_from_json(const std::string& text);

void save_mps(const MatrixProductState& psi, const std::filesystem::path& path);
MatrixProductState load_mps(const std::filesystem::path& path);

}  // namespace stairsynth
