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

// Truncated Fock-space and qubit operator algebra.
//
// Qubit basis ordering is (|g>, |e>), so index 0 is the ground state and
// sigma_z = diag(-1, +1). Bosonic factors use the number basis |0>..|N>.
// Composite indices are row-major over the factor list: the last factor
// varies fastest, matching the Kronecker product A0 (x) A1 (x) ... .

#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tmsv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

enum class FactorKind { bosonic, qubit };

struct ModeSpec {
  FactorKind kind = FactorKind::qubit;
  int cutoff = 1;  // meaningful for bosonic factors only

  static ModeSpec bosonic(int cutoff);
  static ModeSpec qubit() { return ModeSpec{FactorKind::qubit, 1}; }

  Index dimension() const { return kind == FactorKind::qubit ? 2 : cutoff + 1; }
  bool operator==(const ModeSpec&) const = default;
};

/// Ordered tensor factors. Factor order is fixed at construction.
class CompositeSpace {
 public:
  explicit CompositeSpace(std::vector<ModeSpec> factors);

  /// (qubit 1, qubit 2, mode 1, mode 2), the order used everywhere downstream.
  static CompositeSpace canonical(int cutoff1, int cutoff2);
  static CompositeSpace canonical(int cutoff) { return canonical(cutoff, cutoff); }

  static constexpr std::size_t kQubit1 = 0;
  static constexpr std::size_t kQubit2 = 1;
  static constexpr std::size_t kMode1 = 2;
  static constexpr std::size_t kMode2 = 3;

  std::span<const ModeSpec> factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  const ModeSpec& factor(std::size_t k) const;
  Index dimension() const { return dimension_; }

  /// The sub-space spanned by the given factors (kept in ascending order).
  CompositeSpace subspace(std::span<const std::size_t> factor_indices) const;

  Index index_of(std::span<const int> digits) const;
  Index index_of(std::initializer_list<int> digits) const {
    return index_of(std::span<const int>(digits.begin(), digits.size()));
  }
  std::vector<int> digits_of(Index flat) const;

  bool operator==(const CompositeSpace& other) const { return factors_ == other.factors_; }
  std::string describe() const;

 private:
  std::vector<ModeSpec> factors_;
  std::vector<Index> strides_;
  Index dimension_ = 1;
};

/// Dense square operator tagged with the space it acts on.
class Operator {
 public:
  Operator(CompositeSpace space, Matrix matrix);

  static Operator identity(const CompositeSpace& space);
  static Operator zero(const CompositeSpace& space);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  Index dimension() const { return matrix_.rows(); }

  Operator adjoint() const;
  /// max_ij |A_ij - conj(A_ji)|
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() < tol; }

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  CompositeSpace space_;
  Matrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);
double max_abs(const Matrix& m);
double max_abs(const Operator& op);

/// Normalised pure state.
class Ket {
 public:
  /// Throws std::invalid_argument unless the vector has unit norm within 1e-10.
  Ket(CompositeSpace space, Vector amplitudes);

  /// Renormalises; the norm must be nonzero.
  static Ket normalized(CompositeSpace space, Vector amplitudes);
  static Ket basis(const CompositeSpace& space, std::span<const int> digits);
  static Ket basis(const CompositeSpace& space, std::initializer_list<int> digits) {
    return basis(space, std::span<const int>(digits.begin(), digits.size()));
  }

  const CompositeSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  CompositeSpace space_;
  Vector amplitudes_;
};

/// Tensor product of kets in factor order of the concatenated spaces.
Ket tensor(const Ket& a, const Ket& b);

class DensityMatrix {
 public:
  static constexpr double kHermiticityTolerance = 1e-9;
  static constexpr double kTraceTolerance = 1e-8;
  static constexpr double kPositivityTolerance = 1e-7;

  /// Validates Hermiticity and unit trace.
  DensityMatrix(CompositeSpace space, Matrix matrix);
  /// Same checks with a caller-chosen trace tolerance.
  DensityMatrix(CompositeSpace space, Matrix matrix, double trace_tolerance);

  static DensityMatrix from_ket(const Ket& ket);
  static DensityMatrix maximally_mixed(const CompositeSpace& space);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

  double trace_error() const;
  double hermiticity_error() const;
  /// Smallest eigenvalue; O(d^3), evaluated on demand only.
  double min_eigenvalue() const;

 private:
  CompositeSpace space_;
  Matrix matrix_;
};

/// <n-1|a|n> = sqrt(n) for 1 <= n <= cutoff. Throws for cutoff < 1.
Operator annihilation(int cutoff);
Operator creation(int cutoff);
Operator number(int cutoff);

enum class Pauli { z, plus, minus, x };
Operator pauli(Pauli which);

/// I (x) ... (x) op (x) ... (x) I with op acting on factor `factor_index`.
Operator embed(const Operator& op, std::size_t factor_index, const CompositeSpace& space);

/// Embeds an operator acting on several factors. `factor_indices` must be
/// strictly increasing and op.space() must equal space.subspace(factor_indices).
Operator embed(const Operator& op, std::span<const std::size_t> factor_indices,
               const CompositeSpace& space);

/// Kronecker product of single-factor operators placed on distinct factors,
/// identity elsewhere. Cheaper than multiplying the individual embeddings.
Operator embed_product(const CompositeSpace& space,
                       std::initializer_list<std::pair<std::size_t, const Operator*>> locals);

Complex expectation(const Operator& op, const Ket& state);
Complex expectation(const Operator& op, const DensityMatrix& state);

/// <A^2> - <A>^2. Throws std::invalid_argument if op is not Hermitian.
double variance(const Operator& op, const Ket& state);
double variance(const Operator& op, const DensityMatrix& state);

/// Reduced density matrix on the kept factors (any order; kept ascending).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// 0.5 * || a - b ||_1 via the eigenvalues of the Hermitian difference.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace tmsv
