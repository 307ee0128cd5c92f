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

#include "stairsynth/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "eigen_bridge.hpp"
#include "stairsynth/errors.hpp"

namespace stairsynth {
namespace {

using ColMatrix = Eigen::MatrixXcd;

constexpr double kSvdResidualTolerance = 1e-12;

SvdFactors full_svd(const ComplexTensor& m) {
  if (m.rank() != 2) throw RankError(fmt::format("svd needs a matrix, got rank {}", m.rank()));
  if (!m.all_finite()) throw NumericalError("svd input contains non-finite entries");
  const ColMatrix a = detail::as_matrix(m);
  Eigen::BDCSVD<ColMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success)
    throw NumericalError(fmt::format("svd did not converge (matrix {}x{}, Frobenius norm {:.6e})",
                                     m.extent(0), m.extent(1), m.norm()));
  SvdFactors out;
  const double residual =
      (solver.matrixU() * solver.singularValues().asDiagonal() * solver.matrixV().adjoint() - a).norm();
  if (residual <= kSvdResidualTolerance * std::max(a.norm(), 1e-300)) {
    out.u = detail::to_tensor(solver.matrixU());
    out.vh = detail::to_tensor(solver.matrixV().adjoint());
    const auto& s = solver.singularValues();
    out.s.assign(s.data(), s.data() + s.size());
  } else {
    Eigen::JacobiSVD<ColMatrix> jacobi(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = detail::to_tensor(jacobi.matrixU());
    out.vh = detail::to_tensor(jacobi.matrixV().adjoint());
    const auto& s = jacobi.singularValues();
    out.s.assign(s.data(), s.data() + s.size());
  }
  if (!out.u.all_finite() || !out.vh.all_finite())
    throw NumericalError(fmt::format("svd produced non-finite factors (norm {:.6e})", m.norm()));
  return out;
}

SvdFactors keep_leading(SvdFactors f, std::size_t keep) {
  const std::size_t k = f.s.size();
  keep = std::clamp<std::size_t>(keep, 1, k);
  if (keep == k) return f;
  double discarded = 0.0;
  for (std::size_t i = keep; i < k; ++i) discarded += f.s[i] * f.s[i];

  const std::size_t rows = f.u.extent(0), cols = f.vh.extent(1);
  ComplexTensor u(Shape{rows, keep});
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < keep; ++c) u(r, c) = f.u(r, c);
  ComplexTensor vh(Shape{keep, cols});
  std::copy_n(f.vh.data().begin(), keep * cols, vh.data().begin());

  f.u = std::move(u);
  f.vh = std::move(vh);
  f.s.resize(keep);
  f.truncation_error = discarded;
  return f;
}

}  // namespace

SvdFactors svd(const ComplexTensor& m) { return full_svd(m); }

SvdFactors truncated_svd(const ComplexTensor& m, std::size_t chi_max, double cutoff) {
  if (chi_max == 0) throw ArgumentError("truncated_svd: chi_max must be positive");
  if (!(cutoff >= 0.0)) throw ArgumentError("truncated_svd: cutoff must be non-negative");
  SvdFactors f = full_svd(m);
  const double threshold = cutoff * f.s.front();
  const auto above = static_cast<std::size_t>(
      std::count_if(f.s.begin(), f.s.end(), [&](double v) { return v >= threshold; }));
  const std::size_t keep = std::min({chi_max, above, f.s.size()});
  return keep_leading(std::move(f), keep);
}

SvdFactors svd_keep(const ComplexTensor& m, std::size_t keep) { return keep_leading(full_svd(m), keep); }

PolarFactors polar_factors(const ComplexTensor& latent) {
  if (latent.rank() != 2) throw RankError("projection needs a matrix");
  if (latent.extent(0) != latent.extent(1))
    throw DimensionError(fmt::format("projection needs a square matrix, got {}x{}", latent.extent(0),
                                     latent.extent(1)));
  if (!latent.all_finite()) throw NumericalError("latent matrix contains non-finite entries");
  const ColMatrix a = detail::as_matrix(latent);
  Eigen::JacobiSVD<ColMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = solver.singularValues();
  const double s_max = s(0);
  const double s_min = s(s.size() - 1);
  if (!(s_min > kProjectionRankTolerance * s_max))
    throw DegenerateProjectionError(
        fmt::format("latent matrix is rank deficient (s_min={:.3e}, s_max={:.3e})", s_min, s_max));
  PolarFactors out;
  out.u = detail::to_tensor(solver.matrixU());
  out.v = detail::to_tensor(solver.matrixV());
  out.s.assign(s.data(), s.data() + s.size());
  out.unitary = detail::to_tensor(solver.matrixU() * solver.matrixV().adjoint());
  return out;
}

ComplexTensor project_to_unitary(const ComplexTensor& latent) { return polar_factors(latent).unitary; }

ComplexTensor project_to_unitary_vjp(const PolarFactors& factors, const ComplexTensor& grad_unitary,
                                     double broadening) {
  const auto u = detail::as_matrix(factors.u);
  const auto v = detail::as_matrix(factors.v);
  const auto g = detail::as_matrix(grad_unitary);
  const Eigen::Index n = u.rows();
  if (g.rows() != n || g.cols() != n) throw DimensionError("gradient shape does not match latent");

  detail::RowMatrix z = u.adjoint() * g * v;
  const double d2 = broadening * broadening;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = factors.s[static_cast<std::size_t>(i)] + factors.s[static_cast<std::size_t>(j)];
      z(i, j) *= x / (x * x + d2);
    }
  }
  const detail::RowMatrix skew = z - z.adjoint();
  return detail::to_tensor(u * skew * v.adjoint());
}

ComplexTensor RealGradient::packed() const {
  ComplexTensor out = d_re;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Complex{d_re[i].real(), d_im[i].real()};
  return out;
}

RealGradient finite_difference_gradient(const std::function<double(const ComplexTensor&)>& loss,
                                        const ComplexTensor& point, double h) {
  if (!(h > 0.0)) throw ArgumentError("finite difference step must be positive");
  auto eval = [&](const ComplexTensor& x) {
    const double value = loss(x);
    if (!std::isfinite(value)) throw NumericalError("loss is not finite during finite differencing");
    return value;
  };
  eval(point);

  RealGradient grad{ComplexTensor(point.shape()), ComplexTensor(point.shape())};
  ComplexTensor probe = point;
  for (std::size_t i = 0; i < point.size(); ++i) {
    for (const Complex dir : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
      probe[i] = point[i] + h * dir;
      const double plus = eval(probe);
      probe[i] = point[i] - h * dir;
      const double minus = eval(probe);
      probe[i] = point[i];
      const double slope = (plus - minus) / (2.0 * h);
      (dir.real() != 0.0 ? grad.d_re : grad.d_im)[i] = slope;
    }
  }
  return grad;
}

}  // namespace stairsynth
