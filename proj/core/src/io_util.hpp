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

#include "json.hpp"
#include "stairsynth/tensor.hpp"

namespace stairsynth::detail {

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames, so readers never see a partial file.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses JSON, turning parser exceptions into ArgumentError naming `what`.
nlohmann::ordered_json parse_json(const std::string& text, const std::string& what);

/// [[re, im], ...] in row-major order.
nlohmann::ordered_json complex_array(const ComplexTensor& t);
ComplexTensor complex_tensor_from_json(const nlohmann::ordered_json& data, Shape shape);

}  // namespace stairsynth::detail
