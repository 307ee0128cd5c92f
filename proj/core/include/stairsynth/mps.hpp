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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stairsynth/tensor.hpp"

namespace stairsynth {

/// Open-boundary matrix product state of qubits.
///
/// Site n holds a tensor of shape (left bond, 2, right bond) with the outer
/// bonds of extent one. `center` records the orthogonality center when the
/// state is in mixed-canonical form: sites left of it are left-isometric and
/// sites right of it are right-isometric. Any operation that breaks this
/// clears the center.
class MatrixProductState {
 public:
  MatrixProductState() = default;
  /// Validates bond agreement and the physical extent of every site.
  explicit MatrixProductState(std::vector<ComplexTensor> tensors,
                              std::optional<std::size_t> center = std::nullopt,
                              std::size_t max_bond = 0);

  std::size_t n_sites() const { return tensors_.size(); }
  const std::vector<ComplexTensor>& tensors() const { return tensors_; }
  const ComplexTensor& tensor(std::size_t site) const { return tensors_.at(site); }
  std::optional<std::size_t> center() const { return center_; }
  /// Bond cap the state was built with; defaults to the largest bond present.
  std::size_t max_bond() const { return max_bond_; }

  /// Extent of bond n in 1..N-1, the bond between sites n-1 and n.
  std::size_t bond_extent(std::size_t bond) const;
  std::vector<std::size_t> bond_extents() const;
  std::size_t largest_bond() const;

  /// Mutators used by in-place algorithms. They drop the center unless told otherwise.
  void set_tensor(std::size_t site, ComplexTensor t, std::optional<std::size_t> new_center = std::nullopt);
  void set_center(std::optional<std::size_t> center) { center_ = center; }

 private:
  std::vector<ComplexTensor> tensors_;
  std::optional<std::size_t> center_;
  std::size_t max_bond_ = 0;
};

/// Computational-basis product state. Needs at least two sites.
MatrixProductState product_state(std::span<const int> bits);
MatrixProductState zero_state(std::size_t n_sites);

/// Random MPS with bond n extent min(chi, 2^n, 2^(N-n)); entries have i.i.d.
/// standard normal real and imaginary parts. Returned canonical at site 0
/// and normalized.
MatrixProductState random_mps(std::size_t n_sites, std::size_t chi, std::uint64_t seed);

/// (|0...0> + |1...1>) / sqrt(2) with bond extent two.
MatrixProductState ghz_state(std::size_t n_sites);

/// Mixed-canonical form with the given center; the represented state is unchanged.
MatrixProductState canonicalize(MatrixProductState psi, std::size_t center);

double norm(const MatrixProductState& psi);
MatrixProductState normalize(MatrixProductState psi);

/// <bra|ket> by left-to-right transfer contraction.
Complex overlap(const MatrixProductState& bra, const MatrixProductState& ket);

/// Schmidt coefficients across bond n (1..N-1), descending.
std::vector<double> schmidt_values(const MatrixProductState& psi, std::size_t bond);

/// Von Neumann entropy -sum p ln p across bond n (1..N-1), skipping p < 1e-15.
/// Throws StateError when the state is not normalized to within 1e-6.
double bond_entropy(const MatrixProductState& psi, std::size_t bond);
/// All N-1 bond entropies in one canonical sweep.
std::vector<double> bond_entropies(const MatrixProductState& psi);
double average_entropy(const MatrixProductState& psi);
/// Entropy of a probability spectrum given as Schmidt coefficients.
double entropy_from_schmidt(std::span<const double> schmidt);

struct GateApplication {
  MatrixProductState state;
  double truncation_error = 0.0;
  std::size_t kept = 0;  // bond extent chosen at the split
};

/// Applies a 4x4 unitary to sites (site, site + 1). The gate acts on the basis
/// |s_site s_site+1> with index 2 * s_site + s_site+1. The pair is split by a
/// truncated SVD and the orthogonality center ends on site + 1.
GateApplication apply_two_qubit_gate(MatrixProductState psi, const ComplexTensor& gate, std::size_t site,
                                     std::size_t chi_max, double cutoff);

/// Same as apply_two_qubit_gate but keeps exactly `keep` singular values.
GateApplication apply_two_qubit_gate_keep(MatrixProductState psi, const ComplexTensor& gate,
                                          std::size_t site, std::size_t keep);

/// Throws GateError unless `gate` is a 4x4 unitary to within `tolerance`.
void check_two_qubit_unitary(const ComplexTensor& gate, double tolerance = 1e-10);

inline constexpr std::size_t kMaxDenseQubits = 20;

/// Dense amplitudes with site 0 as the most significant bit. N <= 20.
ComplexTensor to_statevector(const MatrixProductState& psi);

/// Exact MPS of a dense 2^N vector; Schmidt values below `cutoff * s_0` are dropped.
MatrixProductState from_statevector(const ComplexTensor& amplitudes, double cutoff = 1e-14);

/// 4 chi + 2 (N - 2) chi^2, the entry count of a uniform-bond MPS.
std::uint64_t mps_param_count(std::size_t n_sites, std::size_t chi);

}  // namespace stairsynth
