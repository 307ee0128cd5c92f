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

#include "network.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "stairsynth/errors.hpp"

namespace stairsynth::detail {

LabeledTensor contract_shared(const LabeledTensor& a, const LabeledTensor& b) {
  if (a.labels.size() != a.tensor.rank() || b.labels.size() != b.tensor.rank())
    throw RankError("label count does not match tensor rank");
  std::vector<AxisPair> pairs;
  std::vector<bool> a_shared(a.labels.size(), false), b_shared(b.labels.size(), false);
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    for (std::size_t j = 0; j < b.labels.size(); ++j) {
      if (a.labels[i] == b.labels[j]) {
        pairs.push_back({i, j});
        a_shared[i] = true;
        b_shared[j] = true;
      }
    }
  }
  LabeledTensor out{contract(a.tensor, b.tensor, pairs), {}};
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    if (!a_shared[i]) out.labels.push_back(a.labels[i]);
  for (std::size_t j = 0; j < b.labels.size(); ++j)
    if (!b_shared[j]) out.labels.push_back(b.labels[j]);
  return out;
}

ComplexTensor arrange(const LabeledTensor& t, std::span<const Label> order) {
  if (order.size() != t.labels.size()) throw DimensionError("label order has the wrong length");
  std::vector<std::size_t> perm;
  for (const Label l : order) {
    const auto it = std::find(t.labels.begin(), t.labels.end(), l);
    if (it == t.labels.end()) throw DimensionError(fmt::format("label {} is not an open leg", l));
    perm.push_back(static_cast<std::size_t>(it - t.labels.begin()));
  }
  return t.tensor.permuted(perm);
}

}  // namespace stairsynth::detail
