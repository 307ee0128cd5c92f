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

#include <Eigen/Dense>

#include "stairsynth/errors.hpp"
#include "stairsynth/tensor.hpp"

namespace stairsynth::detail {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixView = Eigen::Map<RowMatrix>;
using ConstMatrixView = Eigen::Map<const RowMatrix>;

inline ConstMatrixView as_matrix(const ComplexTensor& t) {
  if (t.rank() != 2) throw RankError("expected a rank-2 tensor");
  return ConstMatrixView(t.data().data(), static_cast<Eigen::Index>(t.extent(0)),
                         static_cast<Eigen::Index>(t.extent(1)));
}

inline MatrixView as_matrix(ComplexTensor& t) {
  if (t.rank() != 2) throw RankError("expected a rank-2 tensor");
  return MatrixView(t.data().data(), static_cast<Eigen::Index>(t.extent(0)),
                    static_cast<Eigen::Index>(t.extent(1)));
}

template <typename Derived>
ComplexTensor to_tensor(const Eigen::MatrixBase<Derived>& m) {
  ComplexTensor out(Shape{static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  MatrixView(out.data().data(), m.rows(), m.cols()) = m;
  return out;
}

}  // namespace stairsynth::detail
