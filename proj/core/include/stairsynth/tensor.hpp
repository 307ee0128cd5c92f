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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace stairsynth {

using Complex = std::complex<double>;
using Shape = std::vector<std::size_t>;

/// Dense row-major tensor of double-precision complex numbers. Rank 0 is a
/// scalar with one element. Values behave like ordinary C++ values: copies
/// are deep and nothing is shared.
class ComplexTensor {
 public:
  /// Rank-0 tensor holding zero.
  ComplexTensor();
  /// Zero-filled tensor of the given shape. Every extent must be positive.
  explicit ComplexTensor(Shape shape);
  /// Takes ownership of `data`; its length must equal the product of `shape`.
  ComplexTensor(Shape shape, std::vector<Complex> data);

  static ComplexTensor scalar(Complex value);
  static ComplexTensor identity(std::size_t n);
  /// Row-major matrix from nested rows, mostly for tests and small gates.
  static ComplexTensor matrix(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexTensor vector(std::span<const Complex> values);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t extent(std::size_t axis) const;
  std::size_t size() const { return data_.size(); }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  Complex& operator[](std::size_t flat) { return data_[flat]; }
  const Complex& operator[](std::size_t flat) const { return data_[flat]; }

  /// Matrix element access; the tensor must be rank 2.
  Complex& operator()(std::size_t row, std::size_t col);
  const Complex& operator()(std::size_t row, std::size_t col) const;

  /// Element access by full multi-index.
  Complex& at(std::span<const std::size_t> index);
  const Complex& at(std::span<const std::size_t> index) const;
  Complex& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  const Complex& at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  /// Same data viewed with a new shape of equal total size.
  ComplexTensor reshaped(Shape shape) const&;
  ComplexTensor reshaped(Shape shape) &&;
  /// Axis permutation: result axis i is input axis perm[i].
  ComplexTensor permuted(std::span<const std::size_t> perm) const;
  ComplexTensor permuted(std::initializer_list<std::size_t> perm) const {
    return permuted(std::span<const std::size_t>(perm.begin(), perm.size()));
  }
  ComplexTensor conj() const;
  /// Conjugate transpose of a matrix.
  ComplexTensor adjoint() const;

  double norm() const;
  bool all_finite() const;

  ComplexTensor& operator+=(const ComplexTensor& other);
  ComplexTensor& operator-=(const ComplexTensor& other);
  ComplexTensor& operator*=(Complex factor);

 private:
  Shape shape_;
  std::vector<Complex> data_;
};

ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b);
ComplexTensor operator*(Complex factor, ComplexTensor a);
ComplexTensor operator*(ComplexTensor a, Complex factor);

/// Largest absolute entry of a - b. Shapes must match.
double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b);

/// Pair (axis of a, axis of b) to be summed over in `contract`.
struct AxisPair {
  std::size_t a;
  std::size_t b;
};

/// Tensor contraction over the paired axes. The result keeps a's free axes
/// (in order) followed by b's free axes. With no pairs this is the outer
/// product. Throws DimensionError on extent mismatch or invalid axes.
ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const AxisPair> axis_pairs);
inline ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                              std::initializer_list<AxisPair> axis_pairs) {
  return contract(a, b, std::span<const AxisPair>(axis_pairs.begin(), axis_pairs.size()));
}

/// Matrix product of two rank-2 tensors.
ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b);

/// Sum of conj(a_i) * b_i over all entries.
Complex inner(const ComplexTensor& a, const ComplexTensor& b);

}  // namespace stairsynth
