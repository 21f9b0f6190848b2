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

#pragma once

#include "tmsv/fockspace.hpp"

namespace tmsv {

/// Matrix exponential (scaling and squaring, Pade core).
Matrix expm(const Matrix& m);

struct NullSpace {
  /// Right singular vectors for the singular values below the threshold,
  /// smallest first. Always holds at least the smallest one.
  Matrix vectors;
  Eigen::VectorXd singular_values;  // ascending
  Index dimension = 0;              // count below threshold
};

/// Full SVD of a square complex matrix (LAPACK zgesdd). Singular values below
/// `relative_threshold * sigma_max` count towards the null-space dimension.
NullSpace null_space(const Matrix& m, double relative_threshold);

}  // namespace tmsv
