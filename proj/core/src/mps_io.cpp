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

#include "stairsynth/mps_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "io_util.hpp"
#include "json_writer.hpp"
#include "stairsynth/errors.hpp"

namespace stairsynth {

std::string mps_to_json(const MatrixProductState& psi) {
  nlohmann::ordered_json doc;
  doc["n_sites"] = psi.n_sites();
  auto& tensors = doc["tensors"] = nlohmann::ordered_json::array();
  for (const auto& t : psi.tensors()) {
    nlohmann::ordered_json entry;
    entry["shape"] = t.shape();
    entry["data"] = detail::complex_array(t);
    tensors.push_back(std::move(entry));
  }
  return detail::dump_json(doc, 1) + "\n";
}

MatrixProductState mps_from_json(const std::string& text) {
  const auto doc = detail::parse_json(text, "MPS file");
  try {
    const auto n = doc.at("n_sites").get<std::size_t>();
    const auto& entries = doc.at("tensors");
    if (!entries.is_array() || entries.size() != n)
      throw ArgumentError(fmt::format("MPS file declares {} sites but lists {} tensors", n, entries.size()));
    std::vector<ComplexTensor> tensors;
    for (const auto& entry : entries) {
      auto shape = entry.at("shape").get<Shape>();
      if (shape.size() != 3 || shape[1] != 2) throw ArgumentError("MPS tensor shape must be [l, 2, r]");
      tensors.push_back(detail::complex_tensor_from_json(entry.at("data"), std::move(shape)));
    }
    return MatrixProductState(std::move(tensors));
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(fmt::format("malformed MPS file: {}", e.what()));
  }
}

void save_mps(const MatrixProductState& psi, const std::filesystem::path& path) {
  detail::write_text_file(path, mps_to_json(psi));
}

MatrixProductState load_mps(const std::filesystem::path& path) {
  return mps_from_json(detail::read_text_file(path));
}

}  // namespace stairsynth
