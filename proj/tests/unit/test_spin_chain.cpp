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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "stairsynth/errors.hpp"
#include "stairsynth/mps.hpp"
#include "stairsynth/spin_chain.hpp"

namespace stairsynth {
namespace {

SpinChainModel heisenberg(std::size_t n) { return {ChainKind::kHeisenberg, n}; }
SpinChainModel xy(std::size_t n) { return {ChainKind::kXY, n}; }

double dense_ground_energy(std::size_t n, bool with_zz) {
  Eigen::SelfAdjointEigenSolver<oracle::Matrix> es(oracle::kron_hamiltonian(n, with_zz), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

DmrgOptions dmrg_options(std::size_t chi) {
  DmrgOptions o;
  o.chi = chi;
  return o;
}

TEST(Mpo, BondWidths) {
  const MatrixProductOperator h = build_mpo(heisenberg(6));
  const MatrixProductOperator x = build_mpo(xy(6));
  EXPECT_EQ(h.bond_width(0), 1u);
  EXPECT_EQ(h.site(5).extent(3), 1u);
  for (std::size_t b = 1; b < 6; ++b) {
    EXPECT_EQ(h.bond_width(b), 5u);
    EXPECT_EQ(x.bond_width(b), 4u);
  }
}

TEST(Mpo, DenseContractionMatchesKroneckerHamiltonian) {
  for (std::size_t n = 2; n <= 10; ++n)
    for (bool with_zz : {true, false}) {
      const SpinChainModel model{with_zz ? ChainKind::kHeisenberg : ChainKind::kXY, n};
      const ComplexTensor expected = oracle::from_eigen(oracle::kron_hamiltonian(n, with_zz));
      EXPECT_LT(max_abs_diff(mpo_to_dense(build_mpo(model)), expected), 1e-12) << "N=" << n;
      EXPECT_LT(max_abs_diff(explicit_hamiltonian(model), expected), 1e-12) << "N=" << n;
    }
}

TEST(Mpo, TwoSiteSpectra) {
  Eigen::SelfAdjointEigenSolver<oracle::Matrix> h(oracle::to_eigen(mpo_to_dense(build_mpo(heisenberg(2)))));
  EXPECT_NEAR(h.eigenvalues()(0), -0.75, 1e-14);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(h.eigenvalues()(k), 0.25, 1e-14);
  Eigen::SelfAdjointEigenSolver<oracle::Matrix> x(oracle::to_eigen(mpo_to_dense(build_mpo(xy(2)))));
  EXPECT_NEAR(x.eigenvalues()(0), -0.5, 1e-14);
}

TEST(Mpo, Hermitian) {
  for (const auto& model : {heisenberg(8), xy(8)}) {
    const ComplexTensor h = mpo_to_dense(build_mpo(model));
    EXPECT_LT(max_abs_diff(h, h.adjoint()), 1e-14);
  }
}

TEST(Mpo, DenseGuard) {
  EXPECT_THROW(mpo_to_dense(build_mpo(heisenberg(13))), CapacityError);
  EXPECT_THROW(explicit_hamiltonian(heisenberg(13)), CapacityError);
}

TEST(Hamiltonian, MatrixFreeActionMatchesDense) {
  oracle::Random rng(41);
  for (const auto& model : {heisenberg(7), xy(7)}) {
    const oracle::Matrix h = oracle::kron_hamiltonian(7, model.kind == ChainKind::kHeisenberg);
    const oracle::Vector x = oracle::to_vector(rng.gaussian_tensor({128}));
    std::vector<Complex> in(x.data(), x.data() + x.size()), out(128);
    apply_hamiltonian(model, in, out);
    const oracle::Vector expected = h * x;
    for (Eigen::Index i = 0; i < 128; ++i) EXPECT_LT(std::abs(out[i] - expected(i)), 1e-12);
  }
}

TEST(ExactGroundState, TwoSites) {
  EXPECT_NEAR(exact_ground_state(heisenberg(2)).energy, -0.75, 1e-12);
  EXPECT_NEAR(exact_ground_state(xy(2)).energy, -0.5, 1e-12);
}

TEST(ExactGroundState, MatchesDenseEigensolverAtEightSites) {
  for (bool with_zz : {true, false}) {
    const SpinChainModel model{with_zz ? ChainKind::kHeisenberg : ChainKind::kXY, 8};
    const GroundState gs = exact_ground_state(model);
    EXPECT_NEAR(gs.energy, dense_ground_energy(8, with_zz), 1e-10);
    const oracle::Vector v = oracle::to_vector(gs.statevector);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    const oracle::Vector r = oracle::kron_hamiltonian(8, with_zz) * v - gs.energy * v;
    EXPECT_LT(r.norm(), 1e-10);
  }
}

TEST(ExactGroundState, PhaseConvention) {
  const GroundState gs = exact_ground_state(heisenberg(6));
  std::size_t arg = 0;
  for (std::size_t i = 1; i < gs.statevector.size(); ++i)
    if (std::abs(gs.statevector[i]) > std::abs(gs.statevector[arg])) arg = i;
  EXPECT_GT(gs.statevector[arg].real(), 0.0);
  EXPECT_LT(std::abs(gs.statevector[arg].imag()), 1e-14);
  EXPECT_EQ(max_abs_diff(gs.statevector, exact_ground_state(heisenberg(6)).statevector), 0.0);
}

TEST(ExactGroundState, CapacityGuard) { EXPECT_THROW(exact_ground_state(heisenberg(15)), CapacityError); }

TEST(Dmrg, TwoSites) {
  const DmrgResult r = dmrg_ground_state(build_mpo(heisenberg(2)), dmrg_options(2));
  EXPECT_NEAR(r.energy, -0.75, 1e-10);
  EXPECT_NEAR(norm(r.state), 1.0, 1e-12);
}

TEST(Dmrg, TwelveSitesMatchExactDiagonalization) {
  for (const auto& model : {heisenberg(12), xy(12)}) {
    const DmrgResult r = dmrg_ground_state(build_mpo(model), dmrg_options(64));
    const double exact = exact_ground_state(model).energy;
    EXPECT_NEAR(r.energy, exact, 1e-6);
    EXPECT_GE(r.energy, exact - 1e-10);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.state.largest_bond(), 64u);
  }
}

TEST(Dmrg, VariationalBoundAndMonotoneSweeps) {
  for (std::size_t n : {4, 7, 10})
    for (std::size_t chi : {2, 4, 8})
      for (const auto& model : {heisenberg(n), xy(n)}) {
        DmrgOptions o = dmrg_options(chi);
        o.energy_tol = 1e-12;
        const DmrgResult r = dmrg_ground_state(build_mpo(model), o);
        EXPECT_GE(r.energy, exact_ground_state(model).energy - 1e-10);
        for (std::size_t k = 1; k < r.sweep_energies.size(); ++k)
          EXPECT_LE(r.sweep_energies[k], r.sweep_energies[k - 1] + 1e-10);
        EXPECT_LE(r.state.largest_bond(), chi);
      }
}

TEST(Dmrg, FullBondReproducesExactState) {
  for (std::size_t n = 2; n <= 10; n += 2) {
    const SpinChainModel model = heisenberg(n);
    const std::size_t chi = std::size_t{1} << (n / 2);
    const DmrgResult r = dmrg_ground_state(build_mpo(model), dmrg_options(chi));
    const oracle::Vector exact = oracle::to_vector(exact_ground_state(model).statevector);
    const double fidelity = std::abs(exact.dot(oracle::mps_amplitudes(r.state)));
    EXPECT_GT(fidelity, 1.0 - 1e-8) << "N=" << n;
  }
}

// Odd chains have a degenerate spin-doublet ground level, so only the eigenspace is fixed.
TEST(Dmrg, FullBondOddChainLandsInGroundEigenspace) {
  for (std::size_t n = 3; n <= 9; n += 2) {
    const SpinChainModel model = heisenberg(n);
    const std::size_t chi = std::size_t{1} << (n / 2 + 1);
    const DmrgResult r = dmrg_ground_state(build_mpo(model), dmrg_options(chi));
    const double exact = dense_ground_energy(n, true);
    EXPECT_NEAR(r.energy, exact, 1e-9) << "N=" << n;
    const oracle::Vector v = oracle::mps_amplitudes(r.state);
    EXPECT_LT((oracle::kron_hamiltonian(n, true) * v - exact * v).norm(), 1e-4) << "N=" << n;
  }
}

TEST(Dmrg, ExpectationMatchesDense) {
  const MatrixProductState psi = random_mps(6, 4, 3);
  const oracle::Vector v = oracle::mps_amplitudes(psi);
  for (bool with_zz : {true, false}) {
    const SpinChainModel model{with_zz ? ChainKind::kHeisenberg : ChainKind::kXY, 6};
    const Complex dense = v.dot(oracle::kron_hamiltonian(6, with_zz) * v);
    EXPECT_LT(std::abs(expectation(psi, build_mpo(model)) - dense), 1e-12);
  }
}

TEST(Dmrg, LongChainEntanglementGrowsWithBond) {
  const MatrixProductOperator mpo = build_mpo(heisenberg(48));
  std::vector<double> mid;
  for (std::size_t chi : {4, 8, 16, 32, 64}) {
    const DmrgResult r = dmrg_ground_state(mpo, dmrg_options(chi));
    mid.push_back(bond_entropy(r.state, 24));
  }
  for (std::size_t k = 1; k < mid.size(); ++k) EXPECT_GE(mid[k], mid[k - 1] - 1e-6) << "chi index " << k;
  EXPECT_GE(mid.back(), 0.5);
  EXPECT_LE(mid.back(), 1.1);
}

TEST(Dmrg, Errors) {
  DmrgOptions o = dmrg_options(0);
  EXPECT_THROW(dmrg_ground_state(build_mpo(heisenberg(4)), o), ArgumentError);
  o = dmrg_options(4);
  o.max_sweeps = 0;
  EXPECT_THROW(dmrg_ground_state(build_mpo(heisenberg(4)), o), ArgumentError);
  EXPECT_THROW(parse_chain_kind("ising"), ArgumentError);
  EXPECT_EQ(parse_chain_kind("xy"), ChainKind::kXY);
  EXPECT_EQ(to_string(ChainKind::kHeisenberg), "heisenberg");
}

}  // namespace
}  // namespace stairsynth
