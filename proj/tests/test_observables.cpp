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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tmsv/observables.hpp"
#include "tmsv/squeezing.hpp"

using namespace tmsv;

namespace {

// V from the quadrature definitions with x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
double epr_oracle(const oracle::M& rho, int n) {
  const auto o = oracle::canonical_ops(n);
  const double s = 1.0 / std::sqrt(2.0);
  const oracle::M x1 = s * (o.a1 + o.a1.adjoint()), x2 = s * (o.a2 + o.a2.adjoint());
  const oracle::M p1 = -oracle::C(0, 1) * s * (o.a1 - o.a1.adjoint());
  const oracle::M p2 = -oracle::C(0, 1) * s * (o.a2 - o.a2.adjoint());
  const oracle::M u = x1 + x2, v = p1 - p2;
  auto var = [&](const oracle::M& a) {
    const double m = (rho * a).trace().real();
    return (rho * a * a).trace().real() - m * m;
  };
  return var(u) + var(v);
}

}  // namespace

TEST_CASE("vacuum and Fock states") {
  const auto space = CompositeSpace::canonical(4);
  CHECK(epr_variance(Ket::basis(space, {0, 0, 0, 0})) == doctest::Approx(2.0));
  // |1,1>: each quadrature variance is 3/2, correlations vanish.
  CHECK(epr_variance(Ket::basis(space, {0, 0, 1, 1})) == doctest::Approx(6.0));
  CHECK(entanglement_witness(1.99));
  CHECK_FALSE(entanglement_witness(2.0));
}

TEST_CASE("EPR variance of random states matches the quadrature oracle") {
  std::mt19937 rng(11);
  const int n = 3;
  const auto space = CompositeSpace::canonical(n);
  const EprVariance v(space);
  for (int k = 0; k < 100; ++k) {
    const oracle::M rho = oracle::random_density(rng, space.dimension(), 1 + k % 4);
    const double expect = epr_oracle(rho, n);
    CHECK(v(rho) == doctest::Approx(expect).epsilon(1e-10));
    CHECK(epr_variance(DensityMatrix(space, rho)) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("squeezed vacuum reaches the ideal variance") {
  for (double r : {0.0, 0.3, 0.5, 0.6}) {
    const auto space = CompositeSpace::canonical(cutoff_for_ratio(r, 1e-10));
    const Ket t = target_state(std::atanh(r), space);
    CHECK(epr_variance(t) == doctest::Approx(oracle::ideal_v_from_ratio(r)).epsilon(1e-7));
    CHECK(fidelity(DensityMatrix::from_ket(t), t) == doctest::Approx(1.0));
  }
}

TEST_CASE("closed forms of the ideal variance agree") {
  for (int k = 0; k < 100; ++k) {
    const double r = 0.99 * k / 99.0;
    CHECK(std::abs(ideal_variance(std::atanh(r)) - ideal_variance_from_ratio(r)) < 1e-12);
    CHECK(ideal_variance_from_ratio(r) == doctest::Approx(oracle::ideal_v_from_ratio(r)));
  }
}

TEST_CASE("populations") {
  const auto space = CompositeSpace::canonical(3);
  const auto p = populations(Ket::basis(space, {1, 0, 2, 3}));
  CHECK(p.n1 == doctest::Approx(2.0));
  CHECK(p.n2 == doctest::Approx(3.0));
  CHECK(p.pg1 == doctest::Approx(0.0));
  CHECK(p.pg2 == doctest::Approx(1.0));
  CHECK(p.pee == doctest::Approx(0.0));
}

TEST_CASE("observable set evaluates in declaration order") {
  const auto space = CompositeSpace::canonical(2);
  const Ket target = target_state(0.0, space);
  const auto set = ObservableSet::standard(space, target);
  CHECK(set.names() == std::vector<std::string>{"V", "fidelity", "n1", "n2", "pg1", "pg2"});
  const auto vals = set.evaluate(DensityMatrix::from_ket(Ket::basis(space, {0, 1, 1, 0})).matrix());
  CHECK(vals[0] == doctest::Approx(4.0));
  CHECK(vals[1] == doctest::Approx(0.0));
  CHECK(vals[2] == doctest::Approx(1.0));
  CHECK(vals[5] == doctest::Approx(0.0));
}
