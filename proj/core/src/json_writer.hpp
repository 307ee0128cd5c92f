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

#include <string>

#include "json.hpp"

namespace stairsynth::detail {

/// Locale-independent "%.17g" rendering; integral values keep a trailing ".0"
/// so they read back as floating point. Throws NumericalError on NaN/Inf.
std::string format_real(double value);

/// Serializes like nlohmann::json::dump but renders every floating-point
/// number with format_real. indent < 0 gives the compact form.
std::string dump_json(const nlohmann::ordered_json& value, int indent = -1);

}  // namespace stairsynth::detail
