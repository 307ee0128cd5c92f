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

#include "stairsynth/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "eigen_bridge.hpp"
#include "stairsynth/errors.hpp"

namespace stairsynth {
namespace {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t e : shape) {
    if (e == 0) throw DimensionError(fmt::format("zero extent in shape [{}]", fmt::join(shape, ",")));
    n *= e;
  }
  return n;
}

std::vector<std::size_t> row_major_strides(const Shape& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t ax = shape.size(); ax-- > 1;) strides[ax - 1] = strides[ax] * shape[ax];
  return strides;
}

bool is_identity_perm(std::span<const std::size_t> perm) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

}  // namespace

ComplexTensor::ComplexTensor() : data_(1, Complex{0.0, 0.0}) {}

ComplexTensor::ComplexTensor(Shape shape) : shape_(std::move(shape)) {
  data_.assign(shape_size(shape_), Complex{0.0, 0.0});
}

ComplexTensor::ComplexTensor(Shape shape, std::vector<Complex> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_size(shape_) != data_.size())
    throw DimensionError(fmt::format("shape [{}] needs {} entries, got {}", fmt::join(shape_, ","),
                                     shape_size(shape_), data_.size()));
}

ComplexTensor ComplexTensor::scalar(Complex value) { return ComplexTensor(Shape{}, {value}); }

ComplexTensor ComplexTensor::identity(std::size_t n) {
  ComplexTensor id(Shape{n, n});
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

ComplexTensor ComplexTensor::matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(n_rows * n_cols);
  for (const auto& row : rows) {
    if (row.size() != n_cols) throw DimensionError("ragged matrix literal");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexTensor(Shape{n_rows, n_cols}, std::move(data));
}

ComplexTensor ComplexTensor::vector(std::span<const Complex> values) {
  return ComplexTensor(Shape{values.size()}, std::vector<Complex>(values.begin(), values.end()));
}

std::size_t ComplexTensor::extent(std::size_t axis) const {
  if (axis >= shape_.size())
    throw DimensionError(fmt::format("axis {} out of range for rank {}", axis, shape_.size()));
  return shape_[axis];
}

Complex& ComplexTensor::operator()(std::size_t row, std::size_t col) {
  return data_[row * shape_[1] + col];
}

const Complex& ComplexTensor::operator()(std::size_t row, std::size_t col) const {
  return data_[row * shape_[1] + col];
}

Complex& ComplexTensor::at(std::span<const std::size_t> index) {
  return const_cast<Complex&>(std::as_const(*this).at(index));
}

const Complex& ComplexTensor::at(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size())
    throw DimensionError(fmt::format("index of length {} for rank {}", index.size(), shape_.size()));
  std::size_t flat = 0;
  for (std::size_t ax = 0; ax < shape_.size(); ++ax) {
    if (index[ax] >= shape_[ax]) throw DimensionError("index out of range");
    flat = flat * shape_[ax] + index[ax];
  }
  return data_[flat];
}

ComplexTensor ComplexTensor::reshaped(Shape shape) const& {
  ComplexTensor copy = *this;
  return std::move(copy).reshaped(std::move(shape));
}

ComplexTensor ComplexTensor::reshaped(Shape shape) && {
  if (shape_size(shape) != data_.size())
    throw DimensionError(fmt::format("cannot reshape [{}] to [{}]", fmt::join(shape_, ","),
                                     fmt::join(shape, ",")));
  shape_ = std::move(shape);
  return std::move(*this);
}

ComplexTensor ComplexTensor::permuted(std::span<const std::size_t> perm) const {
  const std::size_t r = rank();
  if (perm.size() != r) throw DimensionError("permutation length does not match rank");
  std::vector<bool> seen(r, false);
  for (std::size_t p : perm) {
    if (p >= r || seen[p]) throw DimensionError("invalid axis permutation");
    seen[p] = true;
  }
  if (is_identity_perm(perm)) return *this;

  Shape out_shape(r);
  const auto in_strides = row_major_strides(shape_);
  std::vector<std::size_t> step(r);
  for (std::size_t i = 0; i < r; ++i) {
    out_shape[i] = shape_[perm[i]];
    step[i] = in_strides[perm[i]];
  }
  ComplexTensor out(out_shape);
  std::vector<std::size_t> idx(r, 0);
  std::size_t offset = 0;
  const std::size_t inner = out_shape[r - 1];
  const std::size_t inner_step = step[r - 1];
  Complex* dst = out.data_.data();
  const Complex* src = data_.data();
  for (std::size_t k = 0; k < out.data_.size(); k += inner) {
    for (std::size_t i = 0; i < inner; ++i) dst[k + i] = src[offset + i * inner_step];
    // odometer over all but the innermost axis
    for (std::size_t ax = r - 1; ax-- > 0;) {
      if (++idx[ax] < out_shape[ax]) {
        offset += step[ax];
        break;
      }
      offset -= step[ax] * (out_shape[ax] - 1);
      idx[ax] = 0;
    }
  }
  return out;
}

ComplexTensor ComplexTensor::conj() const {
  ComplexTensor out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

ComplexTensor ComplexTensor::adjoint() const {
  if (rank() != 2) throw RankError("adjoint requires a matrix");
  return permuted({1, 0}).conj();
}

double ComplexTensor::norm() const {
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

bool ComplexTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& other) {
  if (other.shape_ != shape_) throw DimensionError("shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator-=(const ComplexTensor& other) {
  if (other.shape_ != shape_) throw DimensionError("shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator*=(Complex factor) {
  for (auto& z : data_) z *= factor;
  return *this;
}

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b) { return a += b; }
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b) { return a -= b; }
ComplexTensor operator*(Complex factor, ComplexTensor a) { return a *= factor; }
ComplexTensor operator*(ComplexTensor a, Complex factor) { return a *= factor; }

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.shape() != b.shape()) throw DimensionError("shape mismatch in max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const AxisPair> axis_pairs) {
  std::vector<bool> a_paired(a.rank(), false), b_paired(b.rank(), false);
  std::vector<std::size_t> perm_a, perm_b;
  std::size_t inner = 1;
  for (const auto& [ax, bx] : axis_pairs) {
    if (ax >= a.rank() || bx >= b.rank())
      throw DimensionError(fmt::format("axis pair ({},{}) out of range for ranks {} and {}", ax, bx,
                                       a.rank(), b.rank()));
    if (a_paired[ax] || b_paired[bx]) throw DimensionError("axis paired twice");
    if (a.extent(ax) != b.extent(bx))
      throw DimensionError(fmt::format("contracted extents differ: a[{}]={} vs b[{}]={}", ax,
                                       a.extent(ax), bx, b.extent(bx)));
    a_paired[ax] = b_paired[bx] = true;
    inner *= a.extent(ax);
  }

  Shape out_shape;
  std::size_t rows = 1, cols = 1;
  for (std::size_t ax = 0; ax < a.rank(); ++ax) {
    if (a_paired[ax]) continue;
    perm_a.push_back(ax);
    out_shape.push_back(a.extent(ax));
    rows *= a.extent(ax);
  }
  for (const auto& pair : axis_pairs) {
    perm_a.push_back(pair.a);
    perm_b.push_back(pair.b);
  }
  for (std::size_t bx = 0; bx < b.rank(); ++bx) {
    if (b_paired[bx]) continue;
    perm_b.push_back(bx);
    out_shape.push_back(b.extent(bx));
    cols *= b.extent(bx);
  }

  const ComplexTensor ap = a.permuted(perm_a);
  const ComplexTensor bp = b.permuted(perm_b);
  ComplexTensor out(out_shape);
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  const auto k = static_cast<Eigen::Index>(inner);
  detail::MatrixView(out.data().data(), r, c).noalias() =
      detail::ConstMatrixView(ap.data().data(), r, k) * detail::ConstMatrixView(bp.data().data(), k, c);
  return out;
}

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.rank() != 2 || b.rank() != 2) throw RankError("matmul requires matrices");
  return contract(a, b, {{1, 0}});
}

Complex inner(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.shape() != b.shape()) throw DimensionError("shape mismatch in inner product");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace stairsynth
