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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stairsynth/lanczos.hpp"
#include "stairsynth/mps.hpp"
#include "stairsynth/tensor.hpp"

namespace stairsynth {

enum class ChainKind { kHeisenberg, kXY };

std::string_view to_string(ChainKind kind);
/// Accepts "heisenberg" or "xy" (case-sensitive).
ChainKind parse_chain_kind(std::string_view name);

/// Open spin-1/2 chain with unit nearest-neighbour couplings,
///   Heisenberg: sum_n S^x_n S^x_{n+1} + S^y_n S^y_{n+1} + S^z_n S^z_{n+1}
///   XY:         sum_n S^x_n S^x_{n+1} + S^y_n S^y_{n+1}
/// with S = sigma / 2. Basis state |0> is spin up.
struct SpinChainModel {
  ChainKind kind = ChainKind::kHeisenberg;
  std::size_t n_sites = 2;
};

/// Site operators of shape (w_left, 2 out, 2 in, w_right); w_0 = w_N = 1.
class MatrixProductOperator {
 public:
  explicit MatrixProductOperator(std::vector<ComplexTensor> sites);

  std::size_t n_sites() const { return sites_.size(); }
  const ComplexTensor& site(std::size_t n) const { return sites_.at(n); }
  std::size_t bond_width(std::size_t bond) const { return sites_.at(bond).extent(0); }

 private:
  std::vector<ComplexTensor> sites_;
};

/// Bond width 5 for Heisenberg and 4 for XY.
MatrixProductOperator build_mpo(const SpinChainModel& model);

inline constexpr std::size_t kMaxDenseOperatorSites = 12;
inline constexpr std::size_t kMaxExactSites = 14;

/// Dense matrix of an MPO (N <= 12), site 0 most significant.
ComplexTensor mpo_to_dense(const MatrixProductOperator& mpo);

/// Dense Hamiltonian assembled term by term from the 2x2 spin matrices (N <= 12).
ComplexTensor explicit_hamiltonian(const SpinChainModel& model);

/// y = H x without forming H, for 2^N-dimensional x.
void apply_hamiltonian(const SpinChainModel& model, std::span<const Complex> x, std::span<Complex> y);

struct GroundState {
  double energy = 0.0;
  ComplexTensor statevector;  // normalized, largest-magnitude amplitude real positive
  double residual = 0.0;      // ||H v - E v||
};

/// Lowest eigenpair by matrix-free Lanczos. N <= 14.
GroundState exact_ground_state(const SpinChainModel& model, const LanczosOptions& options = {});

struct DmrgOptions {
  std::size_t chi = 64;
  std::size_t max_sweeps = 20;
  double energy_tol = 1e-9;
  double cutoff = 1e-14;  // relative singular-value cutoff at each split
  std::uint64_t seed = 1;
  LanczosOptions lanczos{};
};

struct DmrgResult {
  double energy = 0.0;
  MatrixProductState state;
  std::size_t sweeps_used = 0;
  bool converged = false;
  std::vector<double> sweep_energies;  // energy after each full sweep
  double max_truncation_error = 0.0;
};

/// Two-site DMRG. A sweep is a left-to-right pass followed by a right-to-left
/// pass; the run stops when the sweep energy changes by less than energy_tol.
DmrgResult dmrg_ground_state(const MatrixProductOperator& mpo, const DmrgOptions& options);

/// <psi|H|psi> for an MPS and an MPO of equal length.
Complex expectation(const MatrixProductState& psi, const MatrixProductOperator& mpo);

}  // namespace stairsynth
