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

// Cross-checks between the different levels of the model: the squeezing
// transformation, the effective sideband Hamiltonian and its driven origin.

#pragma once

#include <vector>

#include "tmsv/dynamics.hpp"
#include "tmsv/model.hpp"
#include "tmsv/squeezing.hpp"

namespace tmsv {

struct FrameCheckOptions {
  double theta1 = 40.0;
  double ratio = 0.5;
  double gamma_r = 20.0;
  double gamma_phi = 20.0;
  int cutoff = 3;
  double t_final = 0.5;
  int samples = 10;
  double dt = 1e-4;
};

struct FrameCheckReport {
  std::vector<double> times;
  std::vector<double> trace_distances;  // direct vs conjugated transformed-frame run
  double max_trace_distance = 0.0;
  // Same comparison with the textbook transformed Hamiltonian
  // g_eff (a1 sigma_+^1 + a2 sigma_+^2) + h.c. in place of S^dag H S.
  // Differs only through cutoff-boundary rows; informative, not a pass/fail.
  double max_trace_distance_textbook = 0.0;
};

/// Evolves the sideband model from S rho0 S^dag and, separately, the
/// squeeze-transformed model from rho0 = |g,g,0,0>, then compares
/// rho(t) with S rho~(t) S^dag at `samples` evenly spaced times. Qubit decay
/// and dephasing only: photon loss does not commute with S.
FrameCheckReport transformed_frame_check(const FrameCheckOptions& options);

/// Same operator as first_order_generator(params, plan, space).at(t) applied
/// to a vector, with the phases shared across terms so that each call costs
/// a handful of trig evaluations. Used for long, finely stepped RWA runs.
PureGenerator fast_first_order_generator(const SystemParams& params, const DrivePlan& plan,
                                         const CompositeSpace& space);

struct RwaCheckOptions {
  double theta1 = 1.0;
  double ratio = 0.75;
  double xi1 = 0.05;         // xi on the resonant red sideband
  double nu_over_theta = 50.0;
  double nu2_over_nu1 = 1.5;  // keeps cross sidebands off resonance
  // The carrier terms g sigma_+ a e^{i(delta -+ nu)t} shift the qubit by
  // ~4 g^2/delta at second order, which the RWA drops; with g = Theta1/xi
  // this needs delta of order 1e5 Theta1 to stay below the RWA error.
  double delta_over_nu = 4000.0;
  int cutoff = 2;
  double dt_fraction = 0.2;  // dt = dt_fraction / max_frequency
};

struct RwaCheckReport {
  double g = 0.0;
  std::array<double, 2> nu{};
  double delta = 0.0;
  Real2x2 xi = Real2x2::Zero();
  double exchange_period = 0.0;  // 2 pi / (sqrt(2) Theta2)
  double dt = 0.0;
  long steps = 0;
  double max_overlap_deficit = 0.0;  // max_t 1 - |<psi_rwa|psi_driven>|^2
};

/// Pure-state comparison of the first-order driven Hamiltonian against the
/// static sideband Hamiltonian from |g,g,0,0> over one exchange period.
RwaCheckReport rwa_check(const RwaCheckOptions& options);

}  // namespace tmsv
