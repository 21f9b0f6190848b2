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
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tmsv/errors.hpp"
#include "tmsv/model.hpp"
#include "tmsv/validation.hpp"

using namespace tmsv;

TEST_CASE("effective parameters from the sideband strengths") {
  const auto e = EffectiveParams::from_thetas(40.0, 30.0);
  CHECK(e.ratio() == doctest::Approx(0.75));
  CHECK(e.zeta == doctest::Approx(std::atanh(0.75)).epsilon(1e-14));
  CHECK(e.g_eff == doctest::Approx(std::sqrt(40.0 * 40.0 - 30.0 * 30.0)));
  CHECK_THROWS_AS(EffectiveParams::from_thetas(30.0, 40.0), UnsqueezableConfiguration);
  CHECK_THROWS_AS(EffectiveParams::from_thetas(30.0, 30.0), UnsqueezableConfiguration);
  CHECK_THROWS_AS(EffectiveParams::from_thetas(30.0, -1.0), std::invalid_argument);
  CHECK(EffectiveParams::from_thetas(30.0, 0.0).zeta == 0.0);
}

TEST_CASE("effective parameters from couplings and drive amplitudes") {
  Real2x2 g, xi;
  g << 800.0, 800.0, 800.0, 800.0;
  xi << 0.05, 0.0375, 0.0375, 0.05;
  const auto e = effective_params(g, xi);
  CHECK(e.theta1 == doctest::Approx(40.0));
  CHECK(e.theta2 == doctest::Approx(30.0));
  xi(1, 1) = 0.06;
  CHECK_THROWS_AS(effective_params(g, xi), InconsistentSymmetry);
}

TEST_CASE("drive frequencies put each tone on one sideband") {
  const auto p = drive_frequencies(1000.0, {100.0, 150.0});
  CHECK(p.omega_d(0, 0) == 900.0);
  CHECK(p.omega_d(0, 1) == 1150.0);
  CHECK(p.omega_d(1, 0) == 1100.0);
  CHECK(p.omega_d(1, 1) == 850.0);
  CHECK_THROWS_AS(drive_frequencies(100.0, {150.0, 10.0}), NegativeDriveFrequency);
}

TEST_CASE("circuit mapping: LC frequency and inductive coupling") {
  CircuitParams c;
  c.capacitance_pf = {12.0, 12.0};
  c.inductance_ph = {250.0, 250.0};
  c.mutual_inductance_ph = Real2x2::Constant(2.0);
  c.persistent_current_na = 500.0;
  const auto d = circuit_to_params(c);
  const double nu_si = 1.0 / std::sqrt(250e-12 * 12e-12);  // rad/s
  CHECK(d.nu[0] == doctest::Approx(nu_si * 1e-6));
  CHECK(d.nu_ghz[0] == doctest::Approx(nu_si / (2.0 * std::numbers::pi) * 1e-9));
  const double hbar = 1.054571817e-34;
  const double g_si = 2e-12 * 500e-9 * std::sqrt(nu_si / (2.0 * hbar * 250e-12));
  CHECK(d.g(0, 1) == doctest::Approx(g_si * 1e-6));
}

TEST_CASE("sideband Hamiltonian matches the Kronecker construction") {
  for (int n : {1, 2, 4}) {
    const auto space = CompositeSpace::canonical(n);
    const auto o = oracle::canonical_ops(n);
    const auto e = EffectiveParams::from_thetas(40.0, 30.0);
    const Matrix h = build_effective_H(e, space).matrix();
    CHECK(max_abs(h - oracle::sideband_h(o, 40.0, 30.0)) < 1e-12);
    Real2x2 g = Real2x2::Constant(100.0), xi;
    xi << 0.4, 0.3, 0.3, 0.4;
    CHECK(max_abs(build_effective_H(g, xi, space).matrix() - h) < 1e-12);
  }
}

TEST_CASE("sideband Hamiltonian conserves the excitation imbalance") {
  // K = n1 - n2 + (sz1 - sz2)/2 commutes with the sideband coupling.
  const int n = 3;
  const auto o = oracle::canonical_ops(n);
  const oracle::M k = o.a1.adjoint() * o.a1 - o.a2.adjoint() * o.a2 + 0.5 * (o.sz1 - o.sz2);
  const auto space = CompositeSpace::canonical(n);
  const Matrix h = build_effective_H(EffectiveParams::from_thetas(1.0, 0.6), space).matrix();
  CHECK(max_abs(h * k - k * h) < 1e-12);
}

TEST_CASE("transformed Hamiltonian has the decoupled form") {
  const int n = 2;
  const auto o = oracle::canonical_ops(n);
  const auto e = EffectiveParams::from_thetas(5.0, 3.0);
  const oracle::M half = 4.0 * (o.a1 * o.sp1 + o.a2 * o.sp2);
  CHECK(max_abs(build_transformed_H(e, CompositeSpace::canonical(n)).matrix() - (half + half.adjoint())) <
        1e-12);
}

TEST_CASE("first-order generator evaluates the same operator as the flat kernel") {
  SystemParams p;
  p.delta = 3000.0;
  p.nu = {50.0, 75.0};
  p.g = Real2x2::Constant(20.0);
  p.xi << 0.05, 0.0375, 0.0375, 0.05;
  const auto space = CompositeSpace::canonical(2);
  const auto plan = drive_frequencies(p.delta, p.nu);
  const auto td = first_order_generator(p, plan, space);
  const auto fast = fast_first_order_generator(p, plan, space);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double t = time(rng);
    const Vector x = oracle::random_matrix(rng, space.dimension(), 1);
    Vector y1, y2;
    td.apply(t, x, y1);
    fast(t, x, y2);
    CHECK((y1 - y2).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + y1.cwiseAbs().maxCoeff()));
    CHECK(max_abs(Matrix(td.at(t).matrix() * x - y1)) < 1e-9 * (1.0 + y1.cwiseAbs().maxCoeff()));
  }
  CHECK(td.at(0.3).is_hermitian(1e-9));
}

TEST_CASE("full Hamiltonian pieces are Hermitian") {
  SystemParams p;
  p.delta = 500.0;
  p.nu = {50.0, 60.0};
  p.g = Real2x2::Constant(2.0);
  p.xi << 0.05, 0.04, 0.04, 0.05;
  const auto space = CompositeSpace::canonical(2);
  const auto plan = drive_frequencies(p.delta, p.nu);
  CHECK(build_H0(p, space).is_hermitian());
  CHECK(build_HI(p, space).is_hermitian());
  CHECK(build_Hd(p, plan, 0.37, space).is_hermitian());
  CHECK(build_interaction_picture_H(p, plan, 0.37, space).is_hermitian(1e-9));
}

TEST_CASE("system parameter validation names the field") {
  SystemParams p;
  p.delta = 500.0;
  p.nu = {50.0, 60.0};
  p.gamma_r = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("gamma_r"), std::invalid_argument);
}
