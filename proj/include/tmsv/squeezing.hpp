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

// Two-mode squeezing: S(zeta) = exp(zeta (a1 a2 - a1^dag a2^dag)).
//
// With this sign, S|00> = sum_n (-tanh zeta)^n / cosh zeta |n, n>, and the
// EPR pair u = X1 + X2, v = P1 - P2 is the squeezed one.

#pragma once

#include "tmsv/fockspace.hpp"
#include "tmsv/model.hpp"

namespace tmsv {

struct SqueezeSpec {
  double zeta = 0.0;
  CompositeSpace space;

  /// zeta finite, >= 0 and below atanh(1 - 1e-6); exactly two bosonic factors.
  void validate() const;
};

/// Probability mass a two-mode squeezed vacuum with tanh(zeta) = ratio puts
/// beyond Fock level `cutoff`: ratio^(2 (cutoff + 1)).
double tail_mass(double ratio, int cutoff);

/// Smallest cutoff N with tail_mass(ratio, N) <= tail_tolerance (at least 1).
int cutoff_for_ratio(double ratio, double tail_tolerance = 1e-4);

/// Matrix exponential of the truncated generator; identity on qubit factors.
Operator squeeze_operator(const SqueezeSpec& spec);

/// Analytic sum_n (-tanh zeta)^n / cosh zeta |n, n>, truncated at the smaller
/// cutoff and renormalised. `space` must hold exactly the two bosonic factors.
/// Throws CutoffInsufficient when the discarded tail exceeds 1e-3.
Ket tmsv_state(double zeta, const CompositeSpace& space);

/// |g>|g> (x) tmsv on a canonical (q1, q2, m1, m2) space.
Ket target_state(double zeta, const CompositeSpace& space);

struct BogoliubovReport {
  int cutoff = 0;
  int interior_cutoff = 0;  // interior block: n1, n2 <= interior_cutoff
  int working_cutoff = 0;   // per-mode cutoff S was exponentiated at
  double interior_deviation_mode1 = 0.0;
  double interior_deviation_mode2 = 0.0;
  // Same interior elements with S truncated at `cutoff` itself, and the max
  // over the full truncated space. Diagnostics: both are set by the boundary.
  double truncated_interior_deviation = 0.0;
  double boundary_deviation = 0.0;

  double interior_deviation() const {
    return interior_deviation_mode1 > interior_deviation_mode2 ? interior_deviation_mode1
                                                               : interior_deviation_mode2;
  }
};

inline constexpr int kBogoliubovMaxWorkingCutoff = 2048;

/// Max elementwise deviation of S^dag (Theta1 a1 + Theta2 a2^dag) S from
/// g_eff a1 (and the mirrored mode-2 combination) on n1, n2 <= cutoff - 4.
/// S is exponentiated sector by sector (it conserves n1 - n2) at a working
/// cutoff grown until S maps no interior state onto the top sector rows
/// (amplitude < 1e-12).
BogoliubovReport bogoliubov_check(const EffectiveParams& effective, int cutoff);

}  // namespace tmsv
