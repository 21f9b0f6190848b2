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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmsv/fockspace.hpp"
#include "tmsv/hamiltonian.hpp"

namespace tmsv {

/// X = (a + a^dag)/sqrt2 and P = -i(a - a^dag)/sqrt2 for the `mode`-th
/// bosonic factor (0 or 1), embedded on the full space.
std::pair<Operator, Operator> quadratures(const CompositeSpace& space, int mode);

/// u = X1 + X2 and v = P1 - P2.
std::pair<Operator, Operator> epr_operators(const CompositeSpace& space);

/// Precomputed u, u^2, v, v^2 for repeated evaluation of
/// V = Var(u) + Var(v) on one space.
class EprVariance {
 public:
  explicit EprVariance(const CompositeSpace& space);

  double operator()(const Matrix& rho) const;
  double operator()(const DensityMatrix& rho) const;
  double operator()(const Ket& psi) const;

 private:
  CompositeSpace space_;
  SparseMatrix u_, u2_, v_, v2_;
};

double epr_variance(const DensityMatrix& rho);
double epr_variance(const Ket& psi);

/// 2 e^{-2 zeta}
double ideal_variance(double zeta);
/// 2 (1 - r) / (1 + r) with r = tanh(zeta); equal to ideal_variance.
double ideal_variance_from_ratio(double ratio);

/// V < 2. The boundary V = 2 counts as not entangled.
bool entanglement_witness(double v);

/// <psi|rho|psi>, snapped into [0, 1] when within 1e-9 outside it.
double fidelity(const DensityMatrix& rho, const Ket& target);

struct Populations {
  double n1 = 0.0;
  double n2 = 0.0;
  double pg1 = 0.0;
  double pg2 = 0.0;
  double pee = 0.0;
};

/// Mean photon numbers and qubit populations on a canonical space.
Populations populations(const DensityMatrix& rho);
Populations populations(const Ket& psi);

/// Named scalar probes recorded along a trajectory. Evaluation works on raw
/// matrices so that integrators can sample intermediate states.
class ObservableSet {
 public:
  explicit ObservableSet(CompositeSpace space);

  /// Fixed recording set V, fidelity, n1, n2, pg1, pg2 on a canonical space.
  static ObservableSet standard(const CompositeSpace& space, const Ket& target);

  /// Re <A>; A must be Hermitian.
  void add_expectation(std::string name, const Operator& op);
  void add_epr_variance(std::string name);
  void add_fidelity(std::string name, const Ket& target);

  const CompositeSpace& space() const { return space_; }
  const std::vector<std::string>& names() const { return names_; }
  std::vector<double> evaluate(const Matrix& rho) const;

 private:
  enum class Kind { expectation, epr_variance, fidelity };
  struct Probe {
    Kind kind;
    SparseMatrix op;
    Vector target;
  };

  CompositeSpace space_;
  std::vector<std::string> names_;
  std::vector<Probe> probes_;
  std::optional<EprVariance> epr_;
};

/// Tr(A rho) for a sparse A.
Complex trace_product(const SparseMatrix& a, const Matrix& rho);

}  // namespace tmsv
