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

#include "tmsv/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace tmsv {

namespace {

void require_same_space(const CompositeSpace& a, const CompositeSpace& b, const char* where) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(where) + ": space mismatch (" + a.describe() +
                                " vs " + b.describe() + ")");
  }
}

// Flat offsets of every multi-index over `factors`, using the strides of the
// enclosing space. Enumerated in row-major order of the listed factors.
std::vector<Index> offsets_over(const CompositeSpace& space, std::span<const std::size_t> factors,
                                std::span<const Index> strides) {
  std::vector<Index> offsets{0};
  for (std::size_t k : factors) {
    const Index dim = space.factor(k).dimension();
    std::vector<Index> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(dim));
    for (Index base : offsets) {
      for (Index digit = 0; digit < dim; ++digit) next.push_back(base + digit * strides[k]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<Index> strides_of(const CompositeSpace& space) {
  std::vector<Index> strides(space.num_factors());
  Index stride = 1;
  for (std::size_t k = space.num_factors(); k-- > 0;) {
    strides[k] = stride;
    stride *= space.factor(k).dimension();
  }
  return strides;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> chosen) {
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) rest.push_back(k);
  }
  return rest;
}

}  // namespace

ModeSpec ModeSpec::bosonic(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("bosonic cutoff must be >= 1");
  return ModeSpec{FactorKind::bosonic, cutoff};
}

CompositeSpace::CompositeSpace(std::vector<ModeSpec> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("CompositeSpace needs at least one factor");
  for (const auto& f : factors_) {
    if (f.kind == FactorKind::bosonic && f.cutoff < 1) {
      throw std::invalid_argument("bosonic cutoff must be >= 1");
    }
  }
  strides_.resize(factors_.size());
  dimension_ = 1;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    strides_[k] = dimension_;
    dimension_ *= factors_[k].dimension();
  }
}

CompositeSpace CompositeSpace::canonical(int cutoff1, int cutoff2) {
  return CompositeSpace({ModeSpec::qubit(), ModeSpec::qubit(), ModeSpec::bosonic(cutoff1),
                         ModeSpec::bosonic(cutoff2)});
}

const ModeSpec& CompositeSpace::factor(std::size_t k) const {
  if (k >= factors_.size()) throw std::invalid_argument("factor index out of range");
  return factors_[k];
}

CompositeSpace CompositeSpace::subspace(std::span<const std::size_t> factor_indices) const {
  if (factor_indices.empty()) throw std::invalid_argument("subspace: empty factor set");
  std::vector<std::size_t> sorted(factor_indices.begin(), factor_indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("subspace: repeated factor index");
  }
  std::vector<ModeSpec> kept;
  for (std::size_t k : sorted) kept.push_back(factor(k));
  return CompositeSpace(std::move(kept));
}

Index CompositeSpace::index_of(std::span<const int> digits) const {
  if (digits.size() != factors_.size()) throw std::invalid_argument("index_of: wrong digit count");
  Index flat = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= factors_[k].dimension()) {
      throw std::invalid_argument("index_of: digit out of range");
    }
    flat += digits[k] * strides_[k];
  }
  return flat;
}

std::vector<int> CompositeSpace::digits_of(Index flat) const {
  if (flat < 0 || flat >= dimension_) throw std::invalid_argument("digits_of: index out of range");
  std::vector<int> digits(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    digits[k] = static_cast<int>(flat / strides_[k]);
    flat %= strides_[k];
  }
  return digits;
}

std::string CompositeSpace::describe() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) out << ",";
    if (factors_[k].kind == FactorKind::qubit) {
      out << "qubit";
    } else {
      out << "fock(" << factors_[k].cutoff << ")";
    }
  }
  out << "]";
  return out.str();
}

// ---------------------------------------------------------------------------

Operator::Operator(CompositeSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.dimension()) {
    throw std::invalid_argument("Operator: matrix shape does not match space dimension");
  }
}

Operator Operator::identity(const CompositeSpace& space) {
  return Operator(space, Matrix::Identity(space.dimension(), space.dimension()));
}

Operator Operator::zero(const CompositeSpace& space) {
  return Operator(space, Matrix::Zero(space.dimension(), space.dimension()));
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

double Operator::hermiticity_error() const { return max_abs(Matrix(matrix_ - matrix_.adjoint())); }

Operator& Operator::operator+=(const Operator& other) {
  require_same_space(space_, other.space_, "Operator::+");
  matrix_ += other.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_space(space_, other.space_, "Operator::-");
  matrix_ -= other.matrix_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  matrix_ *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space(), "Operator::*");
  return Operator(a.space(), a.matrix() * b.matrix());
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Operator& op) { return max_abs(op.matrix()); }

// ---------------------------------------------------------------------------

Ket::Ket(CompositeSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dimension()) {
    throw std::invalid_argument("Ket: vector length does not match space dimension");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("Ket: state is not normalised");
  }
}

Ket Ket::normalized(CompositeSpace space, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("Ket::normalized: zero vector");
  amplitudes /= norm;
  return Ket(std::move(space), std::move(amplitudes));
}

Ket Ket::basis(const CompositeSpace& space, std::span<const int> digits) {
  Vector v = Vector::Zero(space.dimension());
  v(space.index_of(digits)) = 1.0;
  return Ket(space, std::move(v));
}

Ket tensor(const Ket& a, const Ket& b) {
  std::vector<ModeSpec> factors(a.space().factors().begin(), a.space().factors().end());
  factors.insert(factors.end(), b.space().factors().begin(), b.space().factors().end());
  Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return Ket::normalized(CompositeSpace(std::move(factors)), std::move(v));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(CompositeSpace space, Matrix matrix)
    : DensityMatrix(std::move(space), std::move(matrix), kTraceTolerance) {}

DensityMatrix::DensityMatrix(CompositeSpace space, Matrix matrix, double trace_tolerance)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.dimension()) {
    throw std::invalid_argument("DensityMatrix: shape does not match space dimension");
  }
  if (hermiticity_error() > kHermiticityTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (trace_error() > trace_tolerance) {
    throw std::invalid_argument("DensityMatrix: trace differs from one");
  }
}

DensityMatrix DensityMatrix::from_ket(const Ket& ket) {
  return DensityMatrix(ket.space(), ket.amplitudes() * ket.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(const CompositeSpace& space) {
  const Index d = space.dimension();
  return DensityMatrix(space, Matrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::trace_error() const { return std::abs(matrix_.trace() - 1.0); }

double DensityMatrix::hermiticity_error() const {
  return max_abs(Matrix(matrix_ - matrix_.adjoint()));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------

Operator annihilation(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("annihilation: cutoff must be >= 1");
  CompositeSpace space({ModeSpec::bosonic(cutoff)});
  Matrix m = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(space), std::move(m));
}

Operator creation(int cutoff) { return annihilation(cutoff).adjoint(); }

Operator number(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("number: cutoff must be >= 1");
  CompositeSpace space({ModeSpec::bosonic(cutoff)});
  Matrix m = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) m(n, n) = static_cast<double>(n);
  return Operator(std::move(space), std::move(m));
}

Operator pauli(Pauli which) {
  CompositeSpace space({ModeSpec::qubit()});
  Matrix m = Matrix::Zero(2, 2);
  // index 0 = |g>, index 1 = |e>
  switch (which) {
    case Pauli::z:
      m(0, 0) = -1.0;
      m(1, 1) = 1.0;
      break;
    case Pauli::plus:
      m(1, 0) = 1.0;
      break;
    case Pauli::minus:
      m(0, 1) = 1.0;
      break;
    case Pauli::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
  }
  return Operator(std::move(space), std::move(m));
}

Operator embed(const Operator& op, std::size_t factor_index, const CompositeSpace& space) {
  const std::size_t idx[] = {factor_index};
  return embed(op, std::span<const std::size_t>(idx), space);
}

Operator embed(const Operator& op, std::span<const std::size_t> factor_indices,
               const CompositeSpace& space) {
  if (factor_indices.empty()) throw std::invalid_argument("embed: no factor indices");
  for (std::size_t k = 0; k < factor_indices.size(); ++k) {
    if (factor_indices[k] >= space.num_factors()) {
      throw std::invalid_argument("embed: factor index out of range");
    }
    if (k > 0 && factor_indices[k] <= factor_indices[k - 1]) {
      throw std::invalid_argument("embed: factor indices must be strictly increasing");
    }
  }
  if (op.dimension() != space.subspace(factor_indices).dimension() ||
      !(op.space() == space.subspace(factor_indices))) {
    throw std::invalid_argument("embed: operator does not match the target factors (" +
                                op.space().describe() + " into " + space.describe() + ")");
  }
  const auto strides = strides_of(space);
  const auto sub = offsets_over(space, factor_indices, strides);
  const auto rest_factors = complement(space.num_factors(), factor_indices);
  const auto rest = offsets_over(space, rest_factors, strides);

  const Index d = space.dimension();
  Matrix out = Matrix::Zero(d, d);
  const Matrix& local = op.matrix();
  const Index ds = static_cast<Index>(sub.size());
  for (Index base : rest) {
    for (Index c = 0; c < ds; ++c) {
      for (Index r = 0; r < ds; ++r) {
        const Complex v = local(r, c);
        if (v != Complex{}) out(base + sub[r], base + sub[c]) = v;
      }
    }
  }
  return Operator(space, std::move(out));
}

Operator embed_product(const CompositeSpace& space,
                       std::initializer_list<std::pair<std::size_t, const Operator*>> locals) {
  std::vector<const Operator*> slots(space.num_factors(), nullptr);
  for (const auto& [k, op] : locals) {
    if (k >= space.num_factors()) throw std::invalid_argument("embed_product: index out of range");
    if (slots[k] != nullptr) throw std::invalid_argument("embed_product: factor used twice");
    if (op->space().num_factors() != 1 || !(op->space().factor(0) == space.factor(k))) {
      throw std::invalid_argument("embed_product: operator does not match factor");
    }
    slots[k] = op;
  }
  Matrix acc = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < space.num_factors(); ++k) {
    const Index dk = space.factor(k).dimension();
    if (slots[k] != nullptr) {
      acc = Eigen::kroneckerProduct(acc, slots[k]->matrix()).eval();
    } else {
      acc = Eigen::kroneckerProduct(acc, Matrix::Identity(dk, dk)).eval();
    }
  }
  return Operator(space, std::move(acc));
}

// ---------------------------------------------------------------------------

Complex expectation(const Operator& op, const Ket& state) {
  require_same_space(op.space(), state.space(), "expectation");
  return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

Complex expectation(const Operator& op, const DensityMatrix& state) {
  require_same_space(op.space(), state.space(), "expectation");
  // Tr(A rho) = sum_ij A_ji rho_ij
  return op.matrix().transpose().cwiseProduct(state.matrix()).sum();
}

namespace {

void require_hermitian(const Operator& op, const char* where) {
  if (!op.is_hermitian(1e-10)) throw std::invalid_argument(std::string(where) + ": operator is not Hermitian");
}

}  // namespace

double variance(const Operator& op, const Ket& state) {
  require_hermitian(op, "variance");
  require_same_space(op.space(), state.space(), "variance");
  const Vector av = op.matrix() * state.amplitudes();
  const double mean = state.amplitudes().dot(av).real();
  return av.squaredNorm() - mean * mean;
}

double variance(const Operator& op, const DensityMatrix& state) {
  require_hermitian(op, "variance");
  require_same_space(op.space(), state.space(), "variance");
  const double mean = expectation(op, state).real();
  // Tr(A (A rho)) contracted elementwise against A^T
  const Matrix a_rho = op.matrix() * state.matrix();
  const double second = op.matrix().transpose().cwiseProduct(a_rho).sum().real();
  return second - mean * mean;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const CompositeSpace& space = rho.space();
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.back() >= space.num_factors()) {
    throw std::invalid_argument("partial_trace: invalid keep set");
  }
  const auto strides = strides_of(space);
  const auto keep_off = offsets_over(space, kept, strides);
  const auto traced = complement(space.num_factors(), kept);
  const auto trace_off = offsets_over(space, traced, strides);

  const Index dk = static_cast<Index>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.matrix();
  for (Index c = 0; c < dk; ++c) {
    for (Index r = 0; r < dk; ++r) {
      Complex acc{};
      for (Index t : trace_off) acc += m(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = acc;
    }
  }
  return DensityMatrix(space.subspace(kept), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: shape mismatch");
  }
  Matrix diff = a - b;
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace tmsv
