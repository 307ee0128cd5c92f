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

#include "stairsynth/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "stairsynth/errors.hpp"

namespace stairsynth {
namespace {

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> a) { return std::sqrt(std::max(0.0, dot(a, a).real())); }

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

LanczosResult lanczos_lowest(const HermitianOperator& apply, std::vector<Complex> start,
                             const LanczosOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) throw ArgumentError("lanczos: empty start vector");
  if (options.max_iterations == 0) throw ArgumentError("lanczos: max_iterations must be positive");
  double start_norm = norm(start);
  if (!(start_norm > 0.0) || !std::isfinite(start_norm))
    throw ArgumentError("lanczos: start vector must be nonzero and finite");

  LanczosResult result;
  std::vector<Complex> x = std::move(start);
  for (auto& z : x) z /= start_norm;
  std::vector<Complex> ax(n);

  const std::size_t krylov = std::min(options.max_iterations, n);
  for (std::size_t cycle = 0; cycle <= options.max_restarts; ++cycle) {
    std::vector<std::vector<Complex>> basis;
    std::vector<double> alpha, beta;
    basis.push_back(x);
    Eigen::VectorXd ritz;
    double theta = 0.0;
    bool exhausted = false;

    std::vector<Complex> w(n);
    for (std::size_t j = 0; j < krylov; ++j) {
      apply(basis[j], w);
      ++result.iterations;
      const double a = dot(basis[j], w).real();
      alpha.push_back(a);
      // two passes of classical Gram-Schmidt against the whole basis
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) axpy(-dot(q, w), q, w);
      const double b = norm(w);

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
      Eigen::VectorXd sub = beta.empty() ? Eigen::VectorXd()
                                         : Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(
                                               beta.data(), static_cast<Eigen::Index>(beta.size())));
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()(0);
      ritz = tri.eigenvectors().col(0);
      const double estimate = b * std::abs(ritz(ritz.size() - 1));

      if (b <= 1e-14 * std::max(1.0, std::abs(theta)) || j + 1 == n) {
        exhausted = true;
        break;
      }
      if (estimate < 0.1 * options.tolerance * std::max(1.0, std::abs(theta))) break;
      beta.push_back(b);
      std::vector<Complex> next(w);
      for (auto& z : next) z /= b;
      basis.push_back(std::move(next));
    }

    std::fill(x.begin(), x.end(), Complex{0.0, 0.0});
    for (Eigen::Index i = 0; i < ritz.size(); ++i) axpy(ritz(i), basis[static_cast<std::size_t>(i)], x);
    const double xn = norm(x);
    for (auto& z : x) z /= xn;

    apply(x, ax);
    ++result.iterations;
    const double rq = dot(x, ax).real();
    axpy(-rq, x, ax);
    result.eigenvalue = rq;
    result.residual = norm(ax);
    if (!std::isfinite(result.residual) || !std::isfinite(rq))
      throw NumericalError("lanczos: non-finite Rayleigh quotient");
    if (result.residual <= options.tolerance * std::max(1.0, std::abs(rq)) || exhausted) {
      result.converged = result.residual <= std::max(options.tolerance, 1e-10) * std::max(1.0, std::abs(rq));
      break;
    }
  }
  result.eigenvector = std::move(x);
  return result;
}

}  // namespace stairsynth
