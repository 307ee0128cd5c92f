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

#include "stairsynth/spin_chain.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "stairsynth/errors.hpp"
#include "stairsynth/random.hpp"

namespace stairsynth {
namespace {

using Op2 = std::array<std::array<Complex, 2>, 2>;

constexpr Op2 kIdentity{{{1.0, 0.0}, {0.0, 1.0}}};
constexpr Op2 kZero{{{0.0, 0.0}, {0.0, 0.0}}};
constexpr Op2 kSz{{{0.5, 0.0}, {0.0, -0.5}}};
constexpr Op2 kSplus{{{0.0, 1.0}, {0.0, 0.0}}};   // |0><1|, raises down to up
constexpr Op2 kSminus{{{0.0, 0.0}, {1.0, 0.0}}};  // |1><0|
const Op2 kSx{{{0.0, 0.5}, {0.5, 0.0}}};
const Op2 kSy{{{0.0, Complex{0.0, -0.5}}, {Complex{0.0, 0.5}, 0.0}}};

Op2 scaled(const Op2& op, double f) {
  Op2 out = op;
  for (auto& row : out)
    for (auto& z : row) z *= f;
  return out;
}

// Operator-valued matrix (w_left x w_right) packed into (w_left, 2, 2, w_right).
ComplexTensor pack(const std::vector<std::vector<Op2>>& blocks) {
  const std::size_t wl = blocks.size(), wr = blocks.front().size();
  ComplexTensor t(Shape{wl, 2, 2, wr});
  for (std::size_t a = 0; a < wl; ++a)
    for (std::size_t b = 0; b < wr; ++b)
      for (std::size_t o = 0; o < 2; ++o)
        for (std::size_t i = 0; i < 2; ++i) t.at({a, o, i, b}) = blocks[a][b][o][i];
  return t;
}

void require_sites(const SpinChainModel& model) {
  if (model.n_sites < 2) throw ArgumentError("spin chain needs at least 2 sites");
}

}  // namespace

std::string_view to_string(ChainKind kind) { return kind == ChainKind::kHeisenberg ? "heisenberg" : "xy"; }

ChainKind parse_chain_kind(std::string_view name) {
  if (name == "heisenberg") return ChainKind::kHeisenberg;
  if (name == "xy") return ChainKind::kXY;
  throw ArgumentError(fmt::format("unknown chain kind '{}'", name));
}

MatrixProductOperator::MatrixProductOperator(std::vector<ComplexTensor> sites) : sites_(std::move(sites)) {
  if (sites_.size() < 2) throw ArgumentError("MPO needs at least 2 sites");
  for (std::size_t n = 0; n < sites_.size(); ++n) {
    const auto& w = sites_[n];
    if (w.rank() != 4 || w.extent(1) != 2 || w.extent(2) != 2)
      throw DimensionError(fmt::format("MPO site {} must have shape (wl, 2, 2, wr)", n));
    if (n > 0 && sites_[n - 1].extent(3) != w.extent(0))
      throw DimensionError(fmt::format("MPO bond {} widths disagree", n));
  }
  if (sites_.front().extent(0) != 1 || sites_.back().extent(3) != 1)
    throw DimensionError("MPO outer bonds must have width 1");
}

MatrixProductOperator build_mpo(const SpinChainModel& model) {
  require_sites(model);
  // Channel layout: last index = "nothing placed yet", index 0 = "term complete".
  std::vector<std::vector<Op2>> bulk;
  if (model.kind == ChainKind::kHeisenberg) {
    bulk = {
        {kIdentity, kZero, kZero, kZero, kZero},
        {scaled(kSminus, 0.5), kZero, kZero, kZero, kZero},
        {scaled(kSplus, 0.5), kZero, kZero, kZero, kZero},
        {kSz, kZero, kZero, kZero, kZero},
        {kZero, kSplus, kSminus, kSz, kIdentity},
    };
  } else {
    bulk = {
        {kIdentity, kZero, kZero, kZero},
        {scaled(kSminus, 0.5), kZero, kZero, kZero},
        {scaled(kSplus, 0.5), kZero, kZero, kZero},
        {kZero, kSplus, kSminus, kIdentity},
    };
  }
  const std::size_t w = bulk.size();
  std::vector<std::vector<Op2>> first{bulk.back()};
  std::vector<std::vector<Op2>> last(w);
  for (std::size_t a = 0; a < w; ++a) last[a] = {bulk[a][0]};

  std::vector<ComplexTensor> sites;
  for (std::size_t n = 0; n < model.n_sites; ++n) {
    if (n == 0)
      sites.push_back(pack(first));
    else if (n + 1 == model.n_sites)
      sites.push_back(pack(last));
    else
      sites.push_back(pack(bulk));
  }
  return MatrixProductOperator(std::move(sites));
}

ComplexTensor mpo_to_dense(const MatrixProductOperator& mpo) {
  const std::size_t n = mpo.n_sites();
  if (n > kMaxDenseOperatorSites)
    throw CapacityError(fmt::format("dense operator of {} sites exceeds the {}-site guard", n,
                                    kMaxDenseOperatorSites));
  // acc has shape (out, in, w): the operator string for sites < k with an open MPO bond.
  ComplexTensor acc = mpo.site(0).reshaped({2, 2, mpo.site(0).extent(3)});
  std::size_t dim = 2;
  for (std::size_t k = 1; k < n; ++k) {
    const ComplexTensor next = contract(acc, mpo.site(k), {{2, 0}});  // (O, I, o, i, w)
    const std::size_t w = mpo.site(k).extent(3);
    acc = next.permuted({0, 2, 1, 3, 4}).reshaped({dim * 2, dim * 2, w});
    dim *= 2;
  }
  return std::move(acc).reshaped({dim, dim});
}

ComplexTensor explicit_hamiltonian(const SpinChainModel& model) {
  require_sites(model);
  const std::size_t n = model.n_sites;
  if (n > kMaxDenseOperatorSites) throw CapacityError("explicit Hamiltonian too large");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<const Op2*> components{&kSx, &kSy};
  if (model.kind == ChainKind::kHeisenberg) components.push_back(&kSz);

  ComplexTensor h(Shape{dim, dim});
  for (std::size_t q = 0; q + 1 < n; ++q) {
    const std::size_t shift_a = n - 1 - q, shift_b = n - 2 - q;
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t ia = (col >> shift_a) & 1, ib = (col >> shift_b) & 1;
      for (std::size_t oa = 0; oa < 2; ++oa) {
        for (std::size_t ob = 0; ob < 2; ++ob) {
          Complex amp{0.0, 0.0};
          for (const Op2* op : components) amp += (*op)[oa][ia] * (*op)[ob][ib];
          if (amp == Complex{0.0, 0.0}) continue;
          std::size_t row = col & ~((std::size_t{1} << shift_a) | (std::size_t{1} << shift_b));
          row |= (oa << shift_a) | (ob << shift_b);
          h(row, col) += amp;
        }
      }
    }
  }
  return h;
}

void apply_hamiltonian(const SpinChainModel& model, std::span<const Complex> x, std::span<Complex> y) {
  const std::size_t n = model.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  if (x.size() != dim || y.size() != dim) throw DimensionError("vector length must be 2^N");
  const bool zz = model.kind == ChainKind::kHeisenberg;
  std::fill(y.begin(), y.end(), Complex{0.0, 0.0});
  for (std::size_t b = 0; b < dim; ++b) {
    const Complex amp = x[b];
    if (amp == Complex{0.0, 0.0}) continue;
    for (std::size_t q = 0; q + 1 < n; ++q) {
      const std::size_t mask = std::size_t{3} << (n - 2 - q);
      const std::size_t pair = (b & mask) >> (n - 2 - q);
      const bool aligned = pair == 0 || pair == 3;
      if (zz) y[b] += (aligned ? 0.25 : -0.25) * amp;
      if (!aligned) y[b ^ mask] += 0.5 * amp;
    }
  }
}

GroundState exact_ground_state(const SpinChainModel& model, const LanczosOptions& options) {
  require_sites(model);
  if (model.n_sites > kMaxExactSites)
    throw CapacityError(fmt::format("exact diagonalization of {} sites exceeds the {}-site guard", model.n_sites,
                                    kMaxExactSites));
  const std::size_t dim = std::size_t{1} << model.n_sites;
  ComplexNormalSampler sample(0x5eed, model.n_sites);
  std::vector<Complex> start(dim);
  for (auto& z : start) z = sample();

  const auto res = lanczos_lowest([&](std::span<const Complex> in, std::span<Complex> out) {
    apply_hamiltonian(model, in, out);
  }, std::move(start), options);
  if (!res.converged)
    throw NumericalError(fmt::format("exact diagonalization did not converge (residual {:.3e})", res.residual));

  std::vector<Complex> v = res.eigenvector;
  const auto largest = std::max_element(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    return std::abs(a) < std::abs(b);
  });
  const Complex phase = std::conj(*largest) / std::abs(*largest);
  for (auto& z : v) z *= phase;
  return {res.eigenvalue, ComplexTensor(Shape{dim}, std::move(v)), res.residual};
}

}  // namespace stairsynth
