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

#include "io_util.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "stairsynth/errors.hpp"

namespace stairsynth::detail {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError(fmt::format("cannot write '{}'", tmp.string()));
    out << text;
    if (!out) throw ArgumentError(fmt::format("write to '{}' failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::ordered_json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(fmt::format("{} is not valid JSON: {}", what, e.what()));
  }
}

nlohmann::ordered_json complex_array(const ComplexTensor& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& z : t.data()) arr.push_back({z.real(), z.imag()});
  return arr;
}

ComplexTensor complex_tensor_from_json(const nlohmann::ordered_json& data, Shape shape) {
  if (!data.is_array()) throw ArgumentError("tensor data must be an array of [re, im] pairs");
  std::vector<Complex> values;
  values.reserve(data.size());
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ArgumentError("tensor entries must be [re, im] number pairs");
    values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  std::size_t expected = 1;
  for (auto e : shape) expected *= e;
  if (expected != values.size())
    throw ArgumentError(fmt::format("tensor data has {} entries, shape needs {}", values.size(), expected));
  return ComplexTensor(std::move(shape), std::move(values));
}

}  // namespace stairsynth::detail
