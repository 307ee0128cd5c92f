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

#include <cmath>
#include <filesystem>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "stairsynth/errors.hpp"
#include "stairsynth/mps.hpp"
#include "stairsynth/mps_io.hpp"

namespace stairsynth {
namespace {

const double kLn2 = std::log(2.0);

ComplexTensor cnot() {
  return ComplexTensor::matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

ComplexTensor hadamard_on_first() {
  const double h = 1.0 / std::sqrt(2.0);
  return ComplexTensor::matrix({{h, 0, h, 0}, {0, h, 0, h}, {h, 0, -h, 0}, {0, h, 0, -h}});
}

MatrixProductState bell() {
  const std::vector<int> bits{0, 0};
  auto plus = apply_two_qubit_gate(product_state(bits), hadamard_on_first(), 0, 4, 0.0).state;
  return apply_two_qubit_gate(plus, cnot(), 0, 4, 0.0).state;
}

// |<a|b>| for dense vectors of unit norm; 1 means equal up to a global phase.
double phase_free_fidelity(const oracle::Vector& a, const oracle::Vector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

void expect_isometries(const MatrixProductState& psi, std::size_t center) {
  for (std::size_t n = 0; n < psi.n_sites(); ++n) {
    if (n == center) continue;
    const ComplexTensor& t = psi.tensor(n);
    const std::size_t l = t.extent(0), r = t.extent(2);
    ComplexTensor gram;
    if (n < center) {
      const ComplexTensor m = t.reshaped({l * 2, r});
      gram = matmul(m.adjoint(), m);
      EXPECT_LT(max_abs_diff(gram, ComplexTensor::identity(r)), 1e-10) << "site " << n;
    } else {
      const ComplexTensor m = t.reshaped({l, 2 * r});
      gram = matmul(m, m.adjoint());
      EXPECT_LT(max_abs_diff(gram, ComplexTensor::identity(l)), 1e-10) << "site " << n;
    }
  }
}

TEST(ProductState, Examples) {
  EXPECT_LT(max_abs_diff(to_statevector(product_state(std::vector<int>{0, 0})),
                         ComplexTensor::vector(std::vector<Complex>{1, 0, 0, 0})),
            1e-15);
  EXPECT_LT(max_abs_diff(to_statevector(product_state(std::vector<int>{0, 1})),
                         ComplexTensor::vector(std::vector<Complex>{0, 1, 0, 0})),
            1e-15);
  const ComplexTensor v = to_statevector(product_state(std::vector<int>{0, 1, 0}));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(v[i], Complex(i == 2 ? 1.0 : 0.0));
  const std::vector<int> bits{1, 0, 1, 1, 0};
  for (double s : bond_entropies(product_state(bits))) EXPECT_EQ(s, 0.0);
  EXPECT_EQ(average_entropy(product_state(bits)), 0.0);
}

TEST(ProductState, Errors) {
  EXPECT_THROW(product_state(std::vector<int>{0}), ArgumentError);
  EXPECT_THROW(product_state(std::vector<int>{0, 2}), ArgumentError);
}

TEST(RandomMps, BondOneIsProductState) {
  for (std::uint64_t seed : {1, 2, 3})
    for (double s : bond_entropies(random_mps(8, 1, seed))) EXPECT_LT(s, 1e-12);
}

TEST(RandomMps, NormalizedWithCappedBonds) {
  const MatrixProductState psi = random_mps(8, 4, 11);
  EXPECT_NEAR(std::abs(overlap(psi, psi)), 1.0, 1e-10);
  const std::vector<std::size_t> expected{2, 4, 4, 4, 4, 4, 2};
  EXPECT_EQ(psi.bond_extents(), expected);
  ASSERT_TRUE(psi.center().has_value());
  expect_isometries(psi, *psi.center());
}

TEST(RandomMps, DeterministicPerSeed) {
  const MatrixProductState a = random_mps(6, 4, 5), b = random_mps(6, 4, 5), c = random_mps(6, 4, 6);
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(max_abs_diff(a.tensor(n), b.tensor(n)), 0.0);
  EXPECT_LT(std::abs(overlap(a, c)), 0.99);
}

TEST(RandomMps, DenseNormOfLargerState) {
  EXPECT_NEAR(oracle::mps_amplitudes(random_mps(10, 8, 3)).norm(), 1.0, 1e-10);
  EXPECT_NEAR(to_statevector(random_mps(10, 8, 3)).norm(), 1.0, 1e-10);
}

TEST(RandomMps, MidChainEntropyOfLongChainWithinHardBound) {
  for (std::uint64_t seed : {1, 2}) {
    const double s = bond_entropy(random_mps(48, 32, seed), 24);
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, std::log(32.0));
  }
}

TEST(Canonicalize, ProductStateAmplitudesUnchanged) {
  const MatrixProductState psi = product_state(std::vector<int>{1, 0, 1, 1});
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_LT(max_abs_diff(to_statevector(canonicalize(psi, k)), to_statevector(psi)), 1e-15);
}

TEST(Canonicalize, StateUnchangedAndIsometric) {
  const MatrixProductState psi = random_mps(8, 4, 9);
  const oracle::Vector before = oracle::mps_amplitudes(psi);
  for (std::size_t k = 0; k < 8; ++k) {
    const MatrixProductState c = canonicalize(psi, k);
    EXPECT_EQ(c.center(), k);
    expect_isometries(c, k);
    EXPECT_NEAR(phase_free_fidelity(before, oracle::mps_amplitudes(c)), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(overlap(psi, c)), 1.0, 1e-10);
  }
}

TEST(Canonicalize, TwiceToSameCenterKeepsEntropies) {
  const MatrixProductState once = canonicalize(random_mps(8, 4, 10), 3);
  const MatrixProductState twice = canonicalize(once, 3);
  const auto a = bond_entropies(once), b = bond_entropies(twice);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(Canonicalize, GaugeInvarianceOfDiagnostics) {
  const MatrixProductState psi = random_mps(7, 4, 12), phi = random_mps(7, 3, 13);
  const auto ref = bond_entropies(psi);
  const Complex ov = overlap(phi, psi);
  for (std::size_t k = 0; k < 7; ++k) {
    const MatrixProductState c = canonicalize(psi, k);
    const auto s = bond_entropies(c);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], ref[i], 1e-10);
    EXPECT_NEAR(std::abs(overlap(phi, c)), std::abs(ov), 1e-10);
  }
}

TEST(Canonicalize, OutOfRangeCenter) { EXPECT_THROW(canonicalize(random_mps(4, 2, 1), 4), ArgumentError); }

TEST(Overlap, Examples) {
  const MatrixProductState psi = random_mps(6, 4, 1);
  EXPECT_NEAR(std::abs(overlap(psi, psi) - Complex{1.0, 0.0}), 0.0, 1e-10);
  EXPECT_EQ(std::abs(overlap(product_state(std::vector<int>{0, 0}), product_state(std::vector<int>{0, 1}))), 0.0);
  EXPECT_THROW(overlap(random_mps(4, 2, 1), random_mps(5, 2, 1)), ArgumentError);
}

TEST(Overlap, MatchesDenseDotProduct) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MatrixProductState a = random_mps(6, 4, seed), b = random_mps(6, 4, seed + 100);
    const Complex dense = oracle::mps_amplitudes(a).dot(oracle::mps_amplitudes(b));
    EXPECT_LT(std::abs(overlap(a, b) - dense), 1e-10);
  }
}

TEST(Entropy, BellAndGhz) {
  const MatrixProductState b = bell();
  EXPECT_NEAR(bond_entropy(b, 1), kLn2, 1e-10);
  EXPECT_NEAR(average_entropy(b), kLn2, 1e-10);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(to_statevector(b), ComplexTensor::vector(std::vector<Complex>{h, 0, 0, h})), 1e-12);
  for (std::size_t n : {3, 6, 10}) {
    const MatrixProductState g = ghz_state(n);
    EXPECT_NEAR(average_entropy(g), kLn2, 1e-12);
    for (double s : bond_entropies(g)) EXPECT_NEAR(s, kLn2, 1e-12);
  }
}

TEST(Entropy, MatchesReducedDensityMatrix) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const MatrixProductState psi = random_mps(6, 4, seed);
    const oracle::Vector v = oracle::mps_amplitudes(psi);
    const auto s = bond_entropies(psi);
    for (std::size_t n = 1; n < 6; ++n) {
      EXPECT_NEAR(bond_entropy(psi, n), oracle::entropy_from_rdm(v, n, 6), 1e-10);
      EXPECT_NEAR(s[n - 1], oracle::entropy_from_rdm(v, n, 6), 1e-10);
    }
    double mean = 0.0;
    for (double x : s) mean += x;
    EXPECT_NEAR(average_entropy(psi), mean / 5.0, 1e-14);
  }
}

TEST(Entropy, CappedByBondExtent) {
  for (std::size_t chi : {1, 2, 3, 5, 8}) {
    const MatrixProductState psi = random_mps(9, chi, 40 + chi);
    const auto s = bond_entropies(psi);
    for (std::size_t n = 1; n < 9; ++n)
      EXPECT_LE(s[n - 1], std::log(static_cast<double>(psi.bond_extent(n))) + 1e-12);
  }
}

TEST(Entropy, UnnormalizedStateIsStateError) {
  const MatrixProductState psi = random_mps(4, 2, 3);
  std::vector<ComplexTensor> t = psi.tensors();
  t[0] *= Complex{2.0, 0.0};
  EXPECT_THROW(bond_entropy(MatrixProductState(t), 1), StateError);
}

TEST(Entropy, FromSchmidtSkipsTinyWeights) {
  const std::vector<double> lam{1.0, 1e-9};
  EXPECT_EQ(entropy_from_schmidt(lam), 0.0);
}

TEST(GateApplication, IdentityIsExact) {
  const MatrixProductState psi = random_mps(6, 4, 2);
  for (std::size_t site = 0; site < 5; ++site) {
    const GateApplication g = apply_two_qubit_gate(psi, ComplexTensor::identity(4), site, 64, 0.0);
    EXPECT_EQ(g.truncation_error, 0.0);
    EXPECT_NEAR(std::abs(overlap(psi, g.state)), 1.0, 1e-12);
    EXPECT_EQ(g.state.center(), site + 1);
  }
}

TEST(GateApplication, CnotMakesBellPair) {
  const MatrixProductState b = bell();
  EXPECT_NEAR(bond_entropy(b, 1), kLn2, 1e-12);
}

TEST(GateApplication, MatchesDenseGateOnEveryPair) {
  oracle::Random rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixProductState psi = random_mps(6, 4, 200 + trial);
    const oracle::Matrix u = rng.haar_unitary(4);
    for (std::size_t site = 0; site < 5; ++site) {
      const GateApplication g = apply_two_qubit_gate(psi, oracle::from_eigen(u), site, 16, 0.0);
      const oracle::Vector expected = oracle::apply_gate(oracle::mps_amplitudes(psi), u, site, 6);
      EXPECT_LT((oracle::mps_amplitudes(g.state) - expected).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(norm(g.state), 1.0, 1e-10);
    }
  }
}

TEST(GateApplication, TruncationErrorNonIncreasingInChi) {
  oracle::Random rng(32);
  const MatrixProductState psi = random_mps(8, 8, 17);
  const ComplexTensor u = oracle::from_eigen(rng.haar_unitary(4));
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t chi = 1; chi <= 16; ++chi) {
    const double err = apply_two_qubit_gate(psi, u, 3, chi, 0.0).truncation_error;
    EXPECT_LE(err, previous + 1e-15);
    previous = err;
  }
  EXPECT_LT(previous, 1e-20);
}

TEST(GateApplication, KeepCountIsExact) {
  oracle::Random rng(33);
  const MatrixProductState psi = random_mps(6, 4, 3);
  const ComplexTensor u = oracle::from_eigen(rng.haar_unitary(4));
  const GateApplication free = apply_two_qubit_gate(psi, u, 2, 3, 0.0);
  const GateApplication kept = apply_two_qubit_gate_keep(psi, u, 2, free.kept);
  EXPECT_EQ(kept.kept, free.kept);
  EXPECT_NEAR(std::abs(overlap(free.state, kept.state)), norm(free.state) * norm(kept.state), 1e-12);
  EXPECT_NEAR(kept.truncation_error, free.truncation_error, 1e-14);
  EXPECT_EQ(free.state.bond_extent(3), 3u);
}

TEST(GateApplication, Errors) {
  const MatrixProductState psi = random_mps(4, 2, 1);
  ComplexTensor bad = ComplexTensor::identity(4);
  bad(0, 0) = 2.0;
  EXPECT_THROW(apply_two_qubit_gate(psi, bad, 0, 4, 0.0), GateError);
  EXPECT_THROW(apply_two_qubit_gate(psi, ComplexTensor::identity(2), 0, 4, 0.0), GateError);
  EXPECT_THROW(apply_two_qubit_gate(psi, ComplexTensor::identity(4), 3, 4, 0.0), ArgumentError);
}

TEST(Statevector, RoundTripAndGuard) {
  const MatrixProductState psi = random_mps(7, 4, 8);
  const ComplexTensor v = to_statevector(psi);
  const MatrixProductState back = from_statevector(v);
  EXPECT_LT(max_abs_diff(to_statevector(back), v), 1e-12);
  EXPECT_EQ(back.largest_bond(), 4u);
  EXPECT_THROW(to_statevector(random_mps(21, 1, 1)), CapacityError);
  const oracle::Vector dense = oracle::mps_amplitudes(psi);
  EXPECT_LT((oracle::to_vector(v) - dense).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ParamCount, Formula) {
  EXPECT_EQ(mps_param_count(2, 1), 4u);
  EXPECT_EQ(mps_param_count(48, 64), 4u * 64 + 2u * 46 * 64 * 64);
  EXPECT_EQ(mps_param_count(48, 64), 377088u);
  EXPECT_EQ(mps_param_count(48, 32), 94336u);
  EXPECT_THROW(mps_param_count(1, 4), ArgumentError);
}

TEST(MpsFile, RoundTripIsBitExact) {
  const MatrixProductState psi = random_mps(6, 4, 77);
  const std::string text = mps_to_json(psi);
  const MatrixProductState back = mps_from_json(text);
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(max_abs_diff(psi.tensor(n), back.tensor(n)), 0.0);
  EXPECT_EQ(mps_to_json(back), text);
  const auto path = std::filesystem::temp_directory_path() / "stairsynth_mps_roundtrip.json";
  save_mps(psi, path);
  const MatrixProductState loaded = load_mps(path);
  EXPECT_EQ(mps_to_json(loaded), text);
  std::filesystem::remove(path);
}

TEST(MpsFile, MalformedInput) {
  EXPECT_THROW(mps_from_json("{\"n_sites\": 2, \"tensors\": []}"), ArgumentError);
  EXPECT_THROW(mps_from_json("not json"), ArgumentError);
}

}  // namespace
}  // namespace stairsynth
