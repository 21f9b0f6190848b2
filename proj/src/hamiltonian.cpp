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

#include "tmsv/hamiltonian.hpp"

#include <stdexcept>

namespace tmsv {

SparseMatrix to_sparse(const Matrix& m) {
  SparseMatrix s = m.sparseView(Complex{0.0}, 0.0);
  s.makeCompressed();
  return s;
}

TimeDependentHamiltonian::TimeDependentHamiltonian(CompositeSpace space, double max_frequency)
    : space_(std::move(space)), max_frequency_(max_frequency) {
  if (!(max_frequency_ > 0.0)) {
    throw std::invalid_argument("TimeDependentHamiltonian: max_frequency must be positive");
  }
}

void TimeDependentHamiltonian::add_term(std::string label, Operator op,
                                        std::function<Complex(double)> coefficient) {
  if (!(op.space() == space_)) {
    throw std::invalid_argument("TimeDependentHamiltonian: term on a different space");
  }
  sparse_.push_back(to_sparse(op.matrix()));
  terms_.push_back(Term{std::move(label), std::move(op), std::move(coefficient)});
}

Operator TimeDependentHamiltonian::at(double t) const {
  Matrix m = Matrix::Zero(space_.dimension(), space_.dimension());
  for (const auto& term : terms_) m += term.coefficient(t) * term.op.matrix();
  return Operator(space_, std::move(m));
}

Complex TimeDependentHamiltonian::coefficient(const std::string& label, double t) const {
  Complex total{};
  for (const auto& term : terms_) {
    if (term.label == label) total += term.coefficient(t);
  }
  return total;
}

void TimeDependentHamiltonian::apply(double t, const Vector& x, Vector& y) const {
  y.setZero(x.size());
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Complex c = terms_[k].coefficient(t);
    if (c != Complex{}) y.noalias() += c * (sparse_[k] * x);
  }
}

}  // namespace tmsv
