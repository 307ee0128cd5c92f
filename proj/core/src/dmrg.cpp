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

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "stairsynth/errors.hpp"
#include "stairsynth/linalg.hpp"
#include "stairsynth/spin_chain.hpp"

namespace stairsynth {
namespace {

// Environment tensors have legs (bra bond, MPO bond, ket bond).
ComplexTensor trivial_environment() { return ComplexTensor(Shape{1, 1, 1}, {Complex{1.0, 0.0}}); }

ComplexTensor grow_left(const ComplexTensor& env, const ComplexTensor& a, const ComplexTensor& w) {
  ComplexTensor t = contract(env, a, {{2, 0}});       // (b, w, s, k')
  t = contract(t, w, {{1, 0}, {2, 2}});               // (b, k', o, w')
  t = contract(t, a.conj(), {{0, 0}, {2, 1}});        // (k', w', b')
  return t.permuted({2, 1, 0});
}

ComplexTensor grow_right(const ComplexTensor& env, const ComplexTensor& b, const ComplexTensor& w) {
  ComplexTensor t = contract(b, env, {{2, 2}});       // (k', s, b, w)
  t = contract(t, w, {{1, 2}, {3, 3}});               // (k', b, w', o)
  t = contract(t, b.conj(), {{1, 2}, {3, 1}});        // (k', w', b')
  return t.permuted({2, 1, 0});
}

// H_eff acting on a two-site tensor of shape (l, 2, 2, r).
ComplexTensor apply_effective(const ComplexTensor& left, const ComplexTensor& w1, const ComplexTensor& w2,
                              const ComplexTensor& right, const ComplexTensor& theta) {
  ComplexTensor t = contract(left, theta, {{2, 0}});  // (b, w, s1, s2, r)
  t = contract(t, w1, {{1, 0}, {2, 2}});              // (b, s2, r, o1, w1)
  t = contract(t, w2, {{4, 0}, {1, 2}});              // (b, r, o1, o2, w2)
  return contract(t, right, {{1, 2}, {4, 1}});        // (b, o1, o2, b')
}

}  // namespace

Complex expectation(const MatrixProductState& psi, const MatrixProductOperator& mpo) {
  if (psi.n_sites() != mpo.n_sites()) throw ArgumentError("state and operator lengths differ");
  ComplexTensor env = trivial_environment();
  for (std::size_t n = 0; n < psi.n_sites(); ++n) env = grow_left(env, psi.tensor(n), mpo.site(n));
  return env[0];
}

DmrgResult dmrg_ground_state(const MatrixProductOperator& mpo, const DmrgOptions& options) {
  if (options.chi == 0) throw ArgumentError("DMRG bond cap must be positive");
  if (options.max_sweeps == 0) throw ArgumentError("DMRG needs at least one sweep");
  const std::size_t n = mpo.n_sites();

  MatrixProductState psi = canonicalize(random_mps(n, options.chi, options.seed), 0);
  std::vector<ComplexTensor> tensors = psi.tensors();

  std::vector<ComplexTensor> left(n + 1), right(n + 1);
  left[0] = trivial_environment();
  right[n] = trivial_environment();
  for (std::size_t k = n; k-- > 1;) right[k] = grow_right(right[k + 1], tensors[k], mpo.site(k));

  DmrgResult result;
  double energy = 0.0;

  const auto rayleigh = [&](std::size_t k, const ComplexTensor& theta) {
    const ComplexTensor h = apply_effective(left[k], mpo.site(k), mpo.site(k + 1), right[k + 2], theta);
    return inner(theta, h).real() / inner(theta, theta).real();
  };

  // Two-site update at (k, k+1). A truncated update that would raise the
  // energy is replaced by an exact split of the current pair, so the energy
  // never increases.
  auto update = [&](std::size_t k, std::size_t sweep) {
    const ComplexTensor theta = contract(tensors[k], tensors[k + 1], {{2, 0}});
    const Shape shape = theta.shape();
    const Shape matrix{shape[0] * 2, 2 * shape[3]};
    const ComplexTensor& lk = left[k];
    const ComplexTensor& rk = right[k + 2];
    const ComplexTensor& w1 = mpo.site(k);
    const ComplexTensor& w2 = mpo.site(k + 1);
    auto apply = [&](std::span<const Complex> x, std::span<Complex> y) {
      const ComplexTensor in(shape, std::vector<Complex>(x.begin(), x.end()));
      const ComplexTensor out = apply_effective(lk, w1, w2, rk, in);
      std::copy(out.data().begin(), out.data().end(), y.begin());
    };
    const auto local = lanczos_lowest(apply, std::vector<Complex>(theta.data().begin(), theta.data().end()),
                                      options.lanczos);
    if (!local.converged)
      throw NumericalError(fmt::format("DMRG local eigensolver did not converge at sweep {}, sites ({}, {}): residual {:.3e}",
                                       sweep, k, k + 1, local.residual));
    SvdFactors f = truncated_svd(ComplexTensor(matrix, local.eigenvector), options.chi, options.cutoff);
    double e = local.eigenvalue;
    if (f.truncation_error > 0.0) {
      ComplexTensor us = f.u;
      for (std::size_t i = 0; i < us.extent(0); ++i)
        for (std::size_t j = 0; j < f.kept(); ++j) us(i, j) *= f.s[j];
      e = rayleigh(k, matmul(us, f.vh).reshaped(shape));
      const double current = rayleigh(k, theta);
      if (e > current) {
        f = truncated_svd(theta.reshaped(matrix), options.chi, options.cutoff);
        e = current;
      }
    }
    result.max_truncation_error = std::max(result.max_truncation_error, f.truncation_error);
    energy = e;
    return f;
  };

  double previous = 0.0;
  for (std::size_t sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      SvdFactors f = update(k, sweep);
      const std::size_t l = tensors[k].extent(0), r = tensors[k + 1].extent(2), kept = f.kept();
      ComplexTensor sv = f.vh;
      for (std::size_t i = 0; i < kept; ++i)
        for (std::size_t j = 0; j < sv.extent(1); ++j) sv(i, j) *= f.s[i];
      tensors[k] = std::move(f.u).reshaped({l, 2, kept});
      tensors[k + 1] = std::move(sv).reshaped({kept, 2, r});
      left[k + 1] = grow_left(left[k], tensors[k], mpo.site(k));
    }
    for (std::size_t k = n - 1; k-- > 0;) {
      SvdFactors f = update(k, sweep);
      const std::size_t l = tensors[k].extent(0), r = tensors[k + 1].extent(2), kept = f.kept();
      ComplexTensor us = f.u;
      for (std::size_t i = 0; i < us.extent(0); ++i)
        for (std::size_t j = 0; j < kept; ++j) us(i, j) *= f.s[j];
      tensors[k] = std::move(us).reshaped({l, 2, kept});
      tensors[k + 1] = std::move(f.vh).reshaped({kept, 2, r});
      right[k + 1] = grow_right(right[k + 2], tensors[k + 1], mpo.site(k + 1));
    }
    result.sweep_energies.push_back(energy);
    result.sweeps_used = sweep;
    if (sweep > 1 && std::abs(energy - previous) < options.energy_tol) {
      result.converged = true;
      break;
    }
    previous = energy;
  }

  result.state = normalize(MatrixProductState(std::move(tensors), 0, options.chi));
  result.energy = expectation(result.state, mpo).real();
  return result;
}

}  // namespace stairsynth
