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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tmsv/fockspace.hpp"

using namespace tmsv;

TEST_CASE("ladder operators and their commutator away from the cutoff") {
  for (int n : {1, 3, 8}) {
    const Operator a = annihilation(n);
    CHECK(max_abs(a.matrix() - oracle::lower(n)) == 0.0);
    CHECK(max_abs(creation(n).matrix() - oracle::lower(n).adjoint()) == 0.0);
    const Matrix c = commutator(a, creation(n)).matrix();
    for (int k = 0; k < n; ++k) CHECK(c(k, k).real() == doctest::Approx(1.0));
    CHECK(c(n, n).real() == doctest::Approx(-static_cast<double>(n)));
    CHECK(max_abs(number(n).matrix() - (creation(n) * a).matrix()) < 1e-14);
  }
  CHECK_THROWS(annihilation(0));
}

TEST_CASE("canonical space index round trip") {
  const CompositeSpace s = CompositeSpace::canonical(3, 4);
  CHECK(s.dimension() == 2 * 2 * 4 * 5);
  CHECK(s.index_of({0, 0, 0, 0}) == 0);
  CHECK(s.index_of({0, 0, 0, 1}) == 1);
  for (Index i = 0; i < s.dimension(); ++i) CHECK(s.index_of(s.digits_of(i)) == i);
  CHECK_THROWS(s.index_of({0, 2, 0, 0}));
  CHECK_THROWS(s.index_of({0, 0, 0}));
}

TEST_CASE("embedding agrees with explicit Kronecker products") {
  const int n = 3;
  const CompositeSpace s = CompositeSpace::canonical(n);
  const auto o = oracle::canonical_ops(n);
  CHECK(max_abs(embed(pauli(Pauli::plus), 0, s).matrix() - o.sp1) == 0.0);
  CHECK(max_abs(embed(pauli(Pauli::plus), 1, s).matrix() - o.sp2) == 0.0);
  CHECK(max_abs(embed(pauli(Pauli::z), 1, s).matrix() - o.sz2) == 0.0);
  CHECK(max_abs(embed(annihilation(n), 2, s).matrix() - o.a1) == 0.0);
  CHECK(max_abs(embed(annihilation(n), 3, s).matrix() - o.a2) == 0.0);
  const Operator sp = pauli(Pauli::plus);
  const Operator ad = creation(n);
  const Matrix prod = embed_product(s, {{0, &sp}, {3, &ad}}).matrix();
  CHECK(max_abs(prod - o.sp1 * o.a2.adjoint()) < 1e-15);
}

TEST_CASE("density matrix checks reject bad input") {
  const CompositeSpace s = CompositeSpace::canonical(1);
  Matrix m = Matrix::Identity(s.dimension(), s.dimension());
  CHECK_THROWS(DensityMatrix(s, m));
  m /= static_cast<double>(s.dimension());
  CHECK_NOTHROW(DensityMatrix(s, m));
  m(0, 1) = Complex(0.0, 0.1);
  CHECK_THROWS(DensityMatrix(s, m));
}

TEST_CASE("partial trace of a product state and trace distance") {
  std::mt19937 rng(7);
  const CompositeSpace q({ModeSpec::qubit()});
  const CompositeSpace m({ModeSpec::bosonic(2)});
  const CompositeSpace s({ModeSpec::qubit(), ModeSpec::bosonic(2)});
  for (int trial = 0; trial < 20; ++trial) {
    const oracle::M r1 = oracle::random_density(rng, 2);
    const oracle::M r2 = oracle::random_density(rng, 3);
    const DensityMatrix rho(s, oracle::kron(r1, r2));
    CHECK(max_abs(partial_trace(rho, {0}).matrix() - r1) < 1e-12);
    CHECK(max_abs(partial_trace(rho, {1}).matrix() - r2) < 1e-12);
  }
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
}

TEST_CASE("expectation and variance of the number operator on a Fock state") {
  const CompositeSpace s({ModeSpec::bosonic(4)});
  const Ket k = Ket::basis(s, {3});
  CHECK(expectation(number(4), k).real() == doctest::Approx(3.0));
  CHECK(variance(number(4), k) == doctest::Approx(0.0));
  CHECK(expectation(number(4), DensityMatrix::from_ket(k)).real() == doctest::Approx(3.0));
}
