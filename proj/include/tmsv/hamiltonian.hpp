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

#include <functional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "tmsv/fockspace.hpp"

namespace tmsv {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

SparseMatrix to_sparse(const Matrix& m);

/// H(t) = sum_k c_k(t) O_k with static operators and scalar time profiles.
/// Hermiticity is the caller's job (include both a term and its conjugate).
class TimeDependentHamiltonian {
 public:
  struct Term {
    std::string label;
    Operator op;
    std::function<Complex(double)> coefficient;
  };

  /// `max_frequency` bounds the fastest oscillation in any coefficient and
  /// drives the default step size.
  TimeDependentHamiltonian(CompositeSpace space, double max_frequency);

  void add_term(std::string label, Operator op, std::function<Complex(double)> coefficient);

  const CompositeSpace& space() const { return space_; }
  double max_frequency() const { return max_frequency_; }
  const std::vector<Term>& terms() const { return terms_; }
  /// Sparse copies of the term operators, same order as terms().
  const std::vector<SparseMatrix>& sparse_terms() const { return sparse_; }

  Operator at(double t) const;
  /// Coefficient of the term with the given label (zero if absent).
  Complex coefficient(const std::string& label, double t) const;

  /// y = H(t) x
  void apply(double t, const Vector& x, Vector& y) const;

 private:
  CompositeSpace space_;
  double max_frequency_;
  std::vector<Term> terms_;
  std::vector<SparseMatrix> sparse_;
};

}  // namespace tmsv
