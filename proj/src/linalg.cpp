// Copyright 2026 The dissipative-tmsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tmsv/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <lapacke.h>
#include <unsupported/Eigen/MatrixFunctions>

namespace tmsv {

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: matrix must be square");
  return m.exp();
}

NullSpace null_space(const Matrix& m, double relative_threshold) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("null_space: matrix must be square and non-empty");
  }
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Matrix a = m;  // destroyed by LAPACK
  Eigen::VectorXd s(n);
  Matrix u(n, n);
  Matrix vt(n, n);
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'A', n, n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
      s.data(), reinterpret_cast<lapack_complex_double*>(u.data()), n,
      reinterpret_cast<lapack_complex_double*>(vt.data()), n);
  if (info != 0) throw std::runtime_error("zgesdd failed, info = " + std::to_string(info));

  // LAPACK returns descending singular values; right vectors are rows of V^H.
  const double threshold = relative_threshold * s(0);
  NullSpace out;
  out.singular_values = s.reverse();
  out.dimension = 0;
  for (lapack_int k = n - 1; k >= 0 && s(k) <= threshold; --k) ++out.dimension;
  const Index keep = std::max<Index>(out.dimension, 1);
  out.vectors.resize(n, keep);
  for (Index k = 0; k < keep; ++k) out.vectors.col(k) = vt.row(n - 1 - k).adjoint();
  return out;
}

}  // namespace tmsv
