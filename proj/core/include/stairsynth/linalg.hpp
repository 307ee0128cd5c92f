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
#include <vector>

#include "stairsynth/tensor.hpp"

namespace stairsynth {

/// Thin SVD m = u * diag(s) * vh, optionally truncated.
struct SvdFactors {
  ComplexTensor u;        // rows x k, orthonormal columns
  std::vector<double> s;  // k values, descending, non-negative
  ComplexTensor vh;       // k x cols, orthonormal rows
  double truncation_error = 0.0;  // sum of squared discarded singular values

  std::size_t kept() const { return s.size(); }
};

/// Full thin SVD of a matrix. Deterministic for a fixed input on a fixed
/// build. The phase gauge of (u, vh) is arbitrary.
SvdFactors svd(const ComplexTensor& m);

/// Keeps min(chi_max, #{s_i >= cutoff * s_0}, min(rows, cols)) singular
/// values, but never fewer than one.
SvdFactors truncated_svd(const ComplexTensor& m, std::size_t chi_max, double cutoff);

/// Same as truncated_svd but keeps exactly `keep` values (clamped to the
/// available count). Used to replay the truncation decisions of an earlier pass.
SvdFactors svd_keep(const ComplexTensor& m, std::size_t keep);

/// Factors of a square latent matrix needed to project it and to pull a
/// gradient back through the projection.
struct PolarFactors {
  ComplexTensor u;        // n x n unitary
  std::vector<double> s;  // descending
  ComplexTensor v;        // n x n unitary (not its adjoint)
  ComplexTensor unitary;  // u * v^dagger
};

/// Relative threshold under which the smallest singular value makes the
/// projection non-unique.
inline constexpr double kProjectionRankTolerance = 1e-14;

/// SVD-based polar factors of a full-rank square matrix. Throws
/// DegenerateProjectionError if s_min <= kProjectionRankTolerance * s_max.
PolarFactors polar_factors(const ComplexTensor& latent);

/// The unitary closest to `latent` in the sense of maximal Re Tr(latent^dagger W).
ComplexTensor project_to_unitary(const ComplexTensor& latent);

/// Vector-Jacobian product of the projection W(G) = U V^dagger.
///
/// `grad_unitary` holds dL/dRe W + i dL/dIm W for a real loss L; the result is
/// the same quantity with respect to the latent G. Writing M = U^dagger dG V,
/// the differential is dW = U Omega V^dagger with
/// Omega_ij = (M - M^dagger)_ij / (s_i + s_j); the transpose of this map gives
/// dL/dG = U (Z - Z^dagger) V^dagger, Z_ij = (U^dagger grad V)_ij / (s_i + s_j).
/// `broadening` replaces 1/x by x/(x^2 + broadening^2) for x = s_i + s_j.
ComplexTensor project_to_unitary_vjp(const PolarFactors& factors, const ComplexTensor& grad_unitary,
                                     double broadening);

/// Central-difference gradient of a real function of a complex tensor, split
/// into the derivative along the real parts and along the imaginary parts.
struct RealGradient {
  ComplexTensor d_re;
  ComplexTensor d_im;

  /// Packs the pair as d_re + i d_im, the convention used by the optimizer.
  ComplexTensor packed() const;
};

RealGradient finite_difference_gradient(const std::function<double(const ComplexTensor&)>& loss,
                                        const ComplexTensor& point, double h);

}  // namespace stairsynth
