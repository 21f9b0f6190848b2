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

// Parameters and Hamiltonian builders for two driven qubits coupled to two
// resonators.
//
// Units: every frequency and rate is an angular frequency in 1/us. A value
// quoted as "X MHz" is ingested as X 1/us. Circuit-derived resonator
// frequencies are angular as well; the GHz figures divide by 2*pi.
//
// 2x2 matrices are indexed [qubit][resonator] (row = qubit lambda, column =
// resonator or drive tone l), all zero-based.

#pragma once

#include <array>

#include <Eigen/Dense>

#include "tmsv/fockspace.hpp"
#include "tmsv/hamiltonian.hpp"

namespace tmsv {

using Real2x2 = Eigen::Matrix2d;

struct SystemParams {
  double delta = 0.0;                  // bare qubit gap
  std::array<double, 2> nu{};          // resonator frequencies
  Real2x2 g = Real2x2::Zero();         // qubit-resonator couplings
  Real2x2 xi = Real2x2::Zero();        // drive amplitude / drive frequency
  double gamma_r = 0.0;                // qubit relaxation
  double gamma_phi = 0.0;              // qubit dephasing
  std::array<double, 2> kappa{};       // photon loss

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct CircuitParams {
  std::array<double, 2> capacitance_pf{};
  std::array<double, 2> inductance_ph{};
  Real2x2 mutual_inductance_ph = Real2x2::Zero();  // [qubit][resonator]
  double persistent_current_na = 0.0;
  double epsilon = 0.0;  // static flux bias energy, 1/us
};

struct CircuitDerived {
  std::array<double, 2> nu{};      // angular, 1/us
  std::array<double, 2> nu_ghz{};  // cyclic, GHz
  Real2x2 g = Real2x2::Zero();     // 1/us
};

/// nu = 1/sqrt(L C); g = M I_p sqrt(nu / (2 hbar L)) evaluated in SI.
CircuitDerived circuit_to_params(const CircuitParams& circuit);

struct EffectiveParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double zeta = 0.0;
  double g_eff = 0.0;

  double ratio() const { return theta2 / theta1; }

  /// Requires theta1 > theta2 >= 0; throws UnsqueezableConfiguration otherwise.
  static EffectiveParams from_thetas(double theta1, double theta2);
};

/// Theta1 from g[0][0]xi[0][0] and g[1][1]xi[1][1]; Theta2 from g[0][1]xi[0][1]
/// and g[1][0]xi[1][0]. Each pair must agree within `relative_tolerance`
/// (InconsistentSymmetry otherwise) and is averaged.
EffectiveParams effective_params(const Real2x2& g, const Real2x2& xi,
                                 double relative_tolerance = 1e-6);

struct DrivePlan {
  Real2x2 omega_d = Real2x2::Zero();  // [qubit][tone]
};

/// [[delta - nu1, delta + nu2], [delta + nu1, delta - nu2]].
DrivePlan drive_frequencies(double delta, const std::array<double, 2>& nu);

/// sum_lambda delta/2 sigma_z + nu_lambda a^dag a
Operator build_H0(const SystemParams& params, const CompositeSpace& space);

/// sum g (sigma_+ + sigma_-)(a^dag + a), counter-rotating terms included.
Operator build_HI(const SystemParams& params, const CompositeSpace& space);

/// -sum xi omega_d cos(omega_d t) sigma_z
Operator build_Hd(const SystemParams& params, const DrivePlan& plan, double t,
                  const CompositeSpace& space);

/// Coupling with the e^{+-i delta t}, e^{+-i nu t} phases of the first
/// rotating frame, plus the untransformed drive term.
Operator build_interaction_picture_H(const SystemParams& params, const DrivePlan& plan, double t,
                                     const CompositeSpace& space);
TimeDependentHamiltonian interaction_picture_generator(const SystemParams& params,
                                                       const DrivePlan& plan,
                                                       const CompositeSpace& space);

/// Sideband Hamiltonian after removing the drive to first order in xi:
///   sum sigma_+ g e^{i delta t}(e^{i nu t} a^dag + e^{-i nu t} a)
///       [1 - sum_l xi_l (e^{i w_l t} - e^{-i w_l t})] + h.c.
/// Term labels are "sp<q>*a<m>" and "sp<q>*ad<m>" (1-based) plus their
/// conjugates "sm<q>*ad<m>", "sm<q>*a<m>".
Operator build_first_order_H(const SystemParams& params, const DrivePlan& plan, double t,
                             const CompositeSpace& space);
TimeDependentHamiltonian first_order_generator(const SystemParams& params, const DrivePlan& plan,
                                               const CompositeSpace& space);

/// sigma_+^1(Theta1 a1 + Theta2 a2^dag) + sigma_+^2(Theta1 a2 + Theta2 a1^dag) + h.c.
Operator build_effective_H(const EffectiveParams& effective, const CompositeSpace& space);

/// General sideband form with per-entry products g*xi:
/// sigma_+^1(gx11 a1 + gx12 a2^dag) + sigma_+^2(gx21 a1^dag + gx22 a2) + h.c.
Operator build_effective_H(const Real2x2& g, const Real2x2& xi, const CompositeSpace& space);

/// sqrt(Theta1^2 - Theta2^2)(a1 sigma_+^1 + a2 sigma_+^2) + h.c.
Operator build_transformed_H(const EffectiveParams& effective, const CompositeSpace& space);

struct FluxQubit {
  Operator hamiltonian;  // persistent-current basis
  double omega_q;        // sqrt(eps^2 + Delta^2)
  double theta;          // tan(theta) = Delta / eps, in [0, pi]
  /// cos(theta) sigma_z - sin(theta) sigma_x: how a sigma_z coupling in the
  /// persistent-current basis reads in the energy eigenbasis.
  Operator eigenbasis_coupling;
  /// diag(-omega_q/2, +omega_q/2) in the (|g>, |e>) ordering.
  Operator eigenbasis_hamiltonian;
};

/// -1/2 (eps sigma_z + Delta sigma_x) in the persistent-current basis.
FluxQubit flux_qubit_H(double epsilon, double gap);

}  // namespace tmsv
