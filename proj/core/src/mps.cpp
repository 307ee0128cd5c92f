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

#include "stairsynth/mps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include <Eigen/QR>
#include <fmt/format.h>

#include "eigen_bridge.hpp"
#include "stairsynth/errors.hpp"
#include "stairsynth/linalg.hpp"
#include "stairsynth/random.hpp"

namespace stairsynth {
namespace {

constexpr double kNormTolerance = 1e-6;
constexpr double kEntropyFloor = 1e-15;

struct QrFactors {
  ComplexTensor q;  // m x k, orthonormal columns
  ComplexTensor r;  // k x n
};

QrFactors thin_qr(const ComplexTensor& m) {
  const Eigen::MatrixXcd a = detail::as_matrix(m);
  const Eigen::Index rows = a.rows(), cols = a.cols(), k = std::min(rows, cols);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, k);
  Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return {detail::to_tensor(q), detail::to_tensor(r)};
}

// Moves the center one site to the right: site becomes left-isometric.
void shift_center_right(MatrixProductState& psi, std::size_t site) {
  const ComplexTensor& a = psi.tensor(site);
  const std::size_t dl = a.extent(0), dr = a.extent(2);
  auto [q, r] = thin_qr(a.reshaped({dl * 2, dr}));
  const std::size_t k = q.extent(1);
  ComplexTensor next = contract(r, psi.tensor(site + 1), {{1, 0}});
  psi.set_tensor(site, std::move(q).reshaped({dl, 2, k}));
  psi.set_tensor(site + 1, std::move(next), site + 1);
}

// Moves the center one site to the left: site becomes right-isometric.
void shift_center_left(MatrixProductState& psi, std::size_t site) {
  const ComplexTensor& a = psi.tensor(site);
  const std::size_t dl = a.extent(0), dr = a.extent(2);
  auto [q, r] = thin_qr(a.reshaped({dl, 2 * dr}).adjoint());
  const std::size_t k = q.extent(1);
  ComplexTensor prev = contract(psi.tensor(site - 1), r.adjoint(), {{2, 0}});
  psi.set_tensor(site, q.adjoint().reshaped({k, 2, dr}));
  psi.set_tensor(site - 1, std::move(prev), site - 1);
}

std::size_t capped_pow2(std::size_t exponent, std::size_t cap) {
  if (exponent >= 63) return cap;
  return std::min<std::size_t>(cap, std::size_t{1} << exponent);
}

void require_sites(std::size_t n) {
  if (n < 2) throw ArgumentError(fmt::format("an MPS needs at least 2 sites, got {}", n));
}

}  // namespace

MatrixProductState::MatrixProductState(std::vector<ComplexTensor> tensors, std::optional<std::size_t> center,
                                       std::size_t max_bond)
    : tensors_(std::move(tensors)), center_(center) {
  if (tensors_.empty()) throw ArgumentError("MPS without sites");
  for (std::size_t n = 0; n < tensors_.size(); ++n) {
    const auto& t = tensors_[n];
    if (t.rank() != 3 || t.extent(1) != 2)
      throw DimensionError(fmt::format("site {} must have shape (l, 2, r)", n));
    if (n > 0 && tensors_[n - 1].extent(2) != t.extent(0))
      throw DimensionError(fmt::format("bond {} extents disagree: {} vs {}", n, tensors_[n - 1].extent(2),
                                       t.extent(0)));
  }
  if (tensors_.front().extent(0) != 1 || tensors_.back().extent(2) != 1)
    throw DimensionError("outer bonds of an open MPS must have extent 1");
  if (center_ && *center_ >= tensors_.size()) throw ArgumentError("canonical center out of range");
  max_bond_ = max_bond == 0 ? largest_bond() : max_bond;
}

std::size_t MatrixProductState::bond_extent(std::size_t bond) const {
  if (bond == 0 || bond >= tensors_.size())
    throw ArgumentError(fmt::format("bond {} out of range 1..{}", bond, tensors_.size() - 1));
  return tensors_[bond].extent(0);
}

std::vector<std::size_t> MatrixProductState::bond_extents() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n < tensors_.size(); ++n) out.push_back(tensors_[n].extent(0));
  return out;
}

std::size_t MatrixProductState::largest_bond() const {
  std::size_t best = 1;
  for (const auto& t : tensors_) best = std::max(best, t.extent(2));
  return best;
}

void MatrixProductState::set_tensor(std::size_t site, ComplexTensor t, std::optional<std::size_t> new_center) {
  tensors_.at(site) = std::move(t);
  center_ = new_center;
}

MatrixProductState product_state(std::span<const int> bits) {
  require_sites(bits.size());
  std::vector<ComplexTensor> tensors;
  for (int b : bits) {
    if (b != 0 && b != 1) throw ArgumentError("product_state bits must be 0 or 1");
    ComplexTensor t(Shape{1, 2, 1});
    t.at({0, static_cast<std::size_t>(b), 0}) = 1.0;
    tensors.push_back(std::move(t));
  }
  return MatrixProductState(std::move(tensors), 0, 1);
}

MatrixProductState zero_state(std::size_t n_sites) {
  const std::vector<int> bits(n_sites, 0);
  return product_state(bits);
}

MatrixProductState random_mps(std::size_t n_sites, std::size_t chi, std::uint64_t seed) {
  require_sites(n_sites);
  if (chi == 0) throw ArgumentError("random_mps: chi must be positive");
  ComplexNormalSampler sample(seed);
  std::vector<ComplexTensor> tensors;
  for (std::size_t n = 0; n < n_sites; ++n) {
    const std::size_t left = n == 0 ? 1 : std::min(capped_pow2(n, chi), capped_pow2(n_sites - n, chi));
    const std::size_t right =
        n + 1 == n_sites ? 1 : std::min(capped_pow2(n + 1, chi), capped_pow2(n_sites - n - 1, chi));
    ComplexTensor t(Shape{left, 2, right});
    for (auto& z : t.data()) z = sample();
    tensors.push_back(std::move(t));
  }
  return normalize(canonicalize(MatrixProductState(std::move(tensors), std::nullopt, chi), 0));
}

MatrixProductState ghz_state(std::size_t n_sites) {
  require_sites(n_sites);
  std::vector<ComplexTensor> tensors;
  const double amp = 1.0 / std::sqrt(2.0);
  for (std::size_t n = 0; n < n_sites; ++n) {
    const std::size_t left = n == 0 ? 1 : 2, right = n + 1 == n_sites ? 1 : 2;
    ComplexTensor t(Shape{left, 2, right});
    for (std::size_t s = 0; s < 2; ++s)
      t.at({left == 1 ? 0 : s, s, right == 1 ? 0 : s}) = n == 0 ? amp : 1.0;
    tensors.push_back(std::move(t));
  }
  return MatrixProductState(std::move(tensors), std::nullopt, 2);
}

MatrixProductState canonicalize(MatrixProductState psi, std::size_t center) {
  const std::size_t n = psi.n_sites();
  if (center >= n) throw ArgumentError(fmt::format("center {} out of range for {} sites", center, n));
  if (const auto current = psi.center()) {
    for (std::size_t s = *current; s < center; ++s) shift_center_right(psi, s);
    for (std::size_t s = *current; s > center; --s) shift_center_left(psi, s);
  } else {
    for (std::size_t s = 0; s < center; ++s) shift_center_right(psi, s);
    for (std::size_t s = n - 1; s > center; --s) shift_center_left(psi, s);
  }
  psi.set_center(center);
  return psi;
}

double norm(const MatrixProductState& psi) {
  if (const auto c = psi.center()) return psi.tensor(*c).norm();
  return std::sqrt(std::max(0.0, overlap(psi, psi).real()));
}

MatrixProductState normalize(MatrixProductState psi) {
  if (!psi.center()) psi = canonicalize(std::move(psi), 0);
  const std::size_t c = *psi.center();
  const double nrm = psi.tensor(c).norm();
  if (!(nrm > 0.0)) throw StateError("cannot normalize a zero state");
  ComplexTensor t = psi.tensor(c);
  t *= 1.0 / nrm;
  psi.set_tensor(c, std::move(t), c);
  return psi;
}

Complex overlap(const MatrixProductState& bra, const MatrixProductState& ket) {
  if (bra.n_sites() != ket.n_sites())
    throw ArgumentError(fmt::format("overlap of states with {} and {} sites", bra.n_sites(), ket.n_sites()));
  ComplexTensor env = ComplexTensor::identity(1);
  for (std::size_t n = 0; n < ket.n_sites(); ++n) {
    const ComplexTensor half = contract(env, ket.tensor(n), {{1, 0}});       // (b, s, k')
    env = contract(bra.tensor(n).conj(), half, {{0, 0}, {1, 1}});            // (b', k')
  }
  return env[0];
}

std::vector<double> schmidt_values(const MatrixProductState& psi, std::size_t bond) {
  psi.bond_extent(bond);
  const MatrixProductState c = canonicalize(psi, bond - 1);
  const ComplexTensor& a = c.tensor(bond - 1);
  return svd(a.reshaped({a.extent(0) * 2, a.extent(2)})).s;
}

double entropy_from_schmidt(std::span<const double> schmidt) {
  double s = 0.0;
  for (double lambda : schmidt) {
    const double p = lambda * lambda;
    if (p < kEntropyFloor) continue;
    s -= p * std::log(p);
  }
  return s;
}

namespace {

void require_normalized(const MatrixProductState& psi) {
  const double nrm = norm(psi);
  if (std::abs(nrm - 1.0) > kNormTolerance)
    throw StateError(fmt::format("entropy requires a normalized state (norm {:.12g})", nrm));
}

}  // namespace

double bond_entropy(const MatrixProductState& psi, std::size_t bond) {
  require_normalized(psi);
  return entropy_from_schmidt(schmidt_values(psi, bond));
}

std::vector<double> bond_entropies(const MatrixProductState& psi) {
  MatrixProductState c = canonicalize(psi, 0);
  require_normalized(c);
  std::vector<double> out;
  out.reserve(c.n_sites() - 1);
  for (std::size_t n = 0; n + 1 < c.n_sites(); ++n) {
    const ComplexTensor& a = c.tensor(n);
    const std::size_t dl = a.extent(0), dr = a.extent(2);
    SvdFactors f = svd(a.reshaped({dl * 2, dr}));
    out.push_back(entropy_from_schmidt(f.s));
    const std::size_t k = f.s.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < dr; ++j) f.vh(i, j) *= f.s[i];
    ComplexTensor next = contract(f.vh, c.tensor(n + 1), {{1, 0}});
    c.set_tensor(n, std::move(f.u).reshaped({dl, 2, k}));
    c.set_tensor(n + 1, std::move(next), n + 1);
  }
  return out;
}

double average_entropy(const MatrixProductState& psi) {
  const auto s = bond_entropies(psi);
  double total = 0.0;
  for (double v : s) total += v;
  return total / static_cast<double>(s.size());
}

void check_two_qubit_unitary(const ComplexTensor& gate, double tolerance) {
  if (gate.shape() != Shape{4, 4}) throw GateError("two-qubit gate must be a 4x4 matrix");
  const double err = max_abs_diff(matmul(gate.adjoint(), gate), ComplexTensor::identity(4));
  if (!(err <= tolerance)) throw GateError(fmt::format("gate is not unitary (max |G^dag G - I| = {:.3e})", err));
}

namespace {

GateApplication apply_gate_impl(MatrixProductState psi, const ComplexTensor& gate, std::size_t site,
                                const std::function<SvdFactors(const ComplexTensor&)>& split) {
  check_two_qubit_unitary(gate);
  if (site + 1 >= psi.n_sites())
    throw ArgumentError(fmt::format("gate site {} out of range for {} sites", site, psi.n_sites()));
  psi = canonicalize(std::move(psi), site);
  const ComplexTensor& a = psi.tensor(site);
  const ComplexTensor& b = psi.tensor(site + 1);
  const std::size_t dl = a.extent(0), dr = b.extent(2);
  const ComplexTensor theta = contract(a, b, {{2, 0}});  // (l, s, t, r)
  const ComplexTensor g = gate.reshaped({2, 2, 2, 2});
  const ComplexTensor evolved = contract(g, theta, {{2, 1}, {3, 2}}).permuted({2, 0, 1, 3});
  SvdFactors f = split(evolved.reshaped({dl * 2, 2 * dr}));
  const std::size_t k = f.s.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < 2 * dr; ++j) f.vh(i, j) *= f.s[i];
  psi.set_tensor(site, std::move(f.u).reshaped({dl, 2, k}));
  psi.set_tensor(site + 1, std::move(f.vh).reshaped({k, 2, dr}), site + 1);
  return {std::move(psi), f.truncation_error, k};
}

}  // namespace

GateApplication apply_two_qubit_gate(MatrixProductState psi, const ComplexTensor& gate, std::size_t site,
                                     std::size_t chi_max, double cutoff) {
  return apply_gate_impl(std::move(psi), gate, site,
                         [&](const ComplexTensor& m) { return truncated_svd(m, chi_max, cutoff); });
}

GateApplication apply_two_qubit_gate_keep(MatrixProductState psi, const ComplexTensor& gate, std::size_t site,
                                          std::size_t keep) {
  return apply_gate_impl(std::move(psi), gate, site, [&](const ComplexTensor& m) { return svd_keep(m, keep); });
}

ComplexTensor to_statevector(const MatrixProductState& psi) {
  const std::size_t n = psi.n_sites();
  if (n > kMaxDenseQubits)
    throw CapacityError(fmt::format("statevector of {} qubits exceeds the {}-qubit guard", n, kMaxDenseQubits));
  ComplexTensor acc = psi.tensor(0).reshaped({2, psi.tensor(0).extent(2)});
  for (std::size_t s = 1; s < n; ++s) {
    const std::size_t rows = acc.extent(0);
    acc = contract(acc, psi.tensor(s), {{1, 0}});
    acc = std::move(acc).reshaped({rows * 2, acc.size() / (rows * 2)});
  }
  return std::move(acc).reshaped({acc.size()});
}

MatrixProductState from_statevector(const ComplexTensor& amplitudes, double cutoff) {
  const std::size_t dim = amplitudes.size();
  if (amplitudes.rank() != 1 || !std::has_single_bit(dim) || dim < 4)
    throw ArgumentError("from_statevector needs a vector of 2^N amplitudes with N >= 2");
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  if (n > kMaxDenseQubits) throw CapacityError("statevector too large");
  std::vector<ComplexTensor> tensors;
  ComplexTensor rest = amplitudes.reshaped({1, dim});
  std::size_t left = 1;
  for (std::size_t s = 0; s + 1 < n; ++s) {
    const std::size_t remaining = rest.size() / (left * 2);
    SvdFactors f = truncated_svd(rest.reshaped({left * 2, remaining}), dim, cutoff);
    const std::size_t k = f.s.size();
    tensors.push_back(std::move(f.u).reshaped({left, 2, k}));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < remaining; ++j) f.vh(i, j) *= f.s[i];
    rest = std::move(f.vh);
    left = k;
  }
  tensors.push_back(std::move(rest).reshaped({left, 2, 1}));
  return MatrixProductState(std::move(tensors), n - 1);
}

std::uint64_t mps_param_count(std::size_t n_sites, std::size_t chi) {
  if (n_sites < 2 || chi == 0) throw ArgumentError("mps_param_count needs N >= 2 and chi >= 1");
  const std::uint64_t c = chi;
  return 4 * c + 2 * static_cast<std::uint64_t>(n_sites - 2) * c * c;
}

}  // namespace stairsynth
