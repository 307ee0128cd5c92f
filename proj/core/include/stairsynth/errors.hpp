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

#include <stdexcept>
#include <string>

namespace stairsynth {

/// Root of the library's exception hierarchy. The CLI maps the three
/// families below (argument, numerical, capacity) onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid caller input: bad sizes, indices, malformed files or configs.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Axis extents do not agree.
class DimensionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Operand has the wrong tensor rank (e.g. SVD of a non-matrix).
class RankError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A supplied two-qubit gate is not unitary.
class GateError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A state violates a precondition such as normalization.
class StateError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Failure of a numerical kernel (non-convergence, non-finite values).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The polar projection of a latent matrix is not unique (rank deficiency).
class DegenerateProjectionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Target and evolved state are orthogonal, so the log-fidelity is undefined.
class OrthogonalityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A hard size guard was hit (dense statevectors, exact diagonalization).
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace stairsynth
