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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stairsynth/tensor.hpp"

namespace stairsynth {

/// y = A x for a Hermitian operator A given only through its action.
using HermitianOperator = std::function<void(std::span<const Complex> x, std::span<Complex> y)>;

struct LanczosOptions {
  std::size_t max_iterations = 100;  // Krylov dimension per cycle
  double tolerance = 1e-12;          // on ||A x - theta x|| / max(1, |theta|)
  std::size_t max_restarts = 20;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  std::vector<Complex> eigenvector;
  double residual = 0.0;
  std::size_t iterations = 0;  // matrix-vector products
  bool converged = false;
};

/// Lowest eigenpair by Lanczos with full reorthogonalization, restarted from
/// the current Ritz vector. `start` need not be normalized but must be nonzero.
LanczosResult lanczos_lowest(const HermitianOperator& apply, std::vector<Complex> start,
                             const LanczosOptions& options = {});

}  // namespace stairsynth
