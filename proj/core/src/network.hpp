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

#include <cstdint>
#include <span>
#include <vector>

#include "stairsynth/tensor.hpp"

namespace stairsynth::detail {

using Label = std::int64_t;

/// A tensor whose axes carry network-wide labels. Two tensors are joined by
/// summing over every label they share.
struct LabeledTensor {
  ComplexTensor tensor;
  std::vector<Label> labels;
};

/// Free labels of a (in order) followed by free labels of b.
LabeledTensor contract_shared(const LabeledTensor& a, const LabeledTensor& b);

/// Permutes the axes into the given label order; the label sets must agree.
ComplexTensor arrange(const LabeledTensor& t, std::span<const Label> order);

}  // namespace stairsynth::detail
