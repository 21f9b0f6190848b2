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

#include "tmsv/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tmsv/errors.hpp"

namespace tmsv {

namespace {

constexpr double kHbar = 1.054571817e-34;  // J s

void require_canonical(const CompositeSpace& space) {
  if (space.num_factors() != 4 || space.factor(0).kind != FactorKind::qubit ||
      space.factor(1).kind != FactorKind::qubit || space.factor(2).kind != FactorKind::bosonic ||
      space.factor(3).kind != FactorKind::bosonic) {
    throw std::invalid_argument("expected canonical (qubit, qubit, mode, mode) space, got " +
                                space.describe());
  }
}

// Single-factor building blocks for a canonical space.
struct Locals {
  Operator sz = pauli(Pauli::z);
  Operator sp = pauli(Pauli::plus);
  Operator sm = pauli(Pauli::minus);
  std::array<Operator, 2> a;
  std::array<Operator, 2> ad;
  std::array<Operator, 2> n;

  explicit Locals(const CompositeSpace& space)
      : a{annihilation(space.factor(2).cutoff), annihilation(space.factor(3).cutoff)},
        ad{creation(space.factor(2).cutoff), creation(space.factor(3).cutoff)},
        n{number(space.factor(2).cutoff), number(space.factor(3).cutoff)} {}
};

constexpr std::size_t qubit_factor(int q) { return static_cast<std::size_t>(q); }
constexpr std::size_t mode_factor(int m) { return CompositeSpace::kMode1 + static_cast<std::size_t>(m); }

Operator qubit_mode(const CompositeSpace& space, int q, const Operator& qop, int m,
                    const Operator& mop) {
  return embed_product(space, {{qubit_factor(q), &qop}, {mode_factor(m), &mop}});
}

void require_finite_nonneg(double v, const std::string& name) {
  if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument(name + " must be finite and >= 0");
}

std::string label(const char* qop, int q, const char* mop, int m) {
  return std::string(qop) + std::to_string(q + 1) + "*" + mop + std::to_string(m + 1);
}

}  // namespace

void SystemParams::validate() const {
  if (!std::isfinite(delta) || delta <= 0.0) throw std::invalid_argument("delta must be > 0");
  for (int l = 0; l < 2; ++l) {
    if (!std::isfinite(nu[l]) || nu[l] <= 0.0) {
      throw std::invalid_argument("nu[" + std::to_string(l) + "] must be > 0");
    }
    require_finite_nonneg(kappa[l], "kappa[" + std::to_string(l) + "]");
  }
  for (int q = 0; q < 2; ++q) {
    for (int l = 0; l < 2; ++l) {
      const std::string at = "[" + std::to_string(q) + "][" + std::to_string(l) + "]";
      require_finite_nonneg(g(q, l), "g" + at);
      if (!std::isfinite(xi(q, l)) || xi(q, l) < 0.0 || xi(q, l) >= 1.0) {
        throw std::invalid_argument("xi" + at + " must lie in [0, 1)");
      }
    }
  }
  require_finite_nonneg(gamma_r, "gamma_r");
  require_finite_nonneg(gamma_phi, "gamma_phi");
}

CircuitDerived circuit_to_params(const CircuitParams& circuit) {
  CircuitDerived out;
  std::array<double, 2> nu_si{};
  for (int l = 0; l < 2; ++l) {
    const double c = circuit.capacitance_pf[l] * 1e-12;
    const double ind = circuit.inductance_ph[l] * 1e-12;
    if (!(c > 0.0) || !(ind > 0.0)) {
      throw std::invalid_argument("circuit: capacitance and inductance must be positive");
    }
    nu_si[l] = 1.0 / std::sqrt(ind * c);
    out.nu[l] = nu_si[l] * 1e-6;
    out.nu_ghz[l] = nu_si[l] / (2.0 * std::numbers::pi) * 1e-9;
  }
  const double ip = circuit.persistent_current_na * 1e-9;
  if (!(ip > 0.0)) throw std::invalid_argument("circuit: persistent current must be positive");
  for (int q = 0; q < 2; ++q) {
    for (int l = 0; l < 2; ++l) {
      const double m = circuit.mutual_inductance_ph(q, l) * 1e-12;
      if (!(m > 0.0)) throw std::invalid_argument("circuit: mutual inductance must be positive");
      const double ind = circuit.inductance_ph[l] * 1e-12;
      out.g(q, l) = m * ip * std::sqrt(nu_si[l] / (2.0 * kHbar * ind)) * 1e-6;
    }
  }
  return out;
}

EffectiveParams EffectiveParams::from_thetas(double theta1, double theta2) {
  if (!std::isfinite(theta1) || !std::isfinite(theta2) || theta2 < 0.0) {
    throw std::invalid_argument("Theta values must be finite with Theta2 >= 0");
  }
  if (!(theta1 > theta2)) {
    throw UnsqueezableConfiguration("Theta2 >= Theta1 (" + std::to_string(theta2) +
                                    " >= " + std::to_string(theta1) +
                                    "): squeeze parameter undefined");
  }
  EffectiveParams p;
  p.theta1 = theta1;
  p.theta2 = theta2;
  p.zeta = std::atanh(theta2 / theta1);
  p.g_eff = std::sqrt((theta1 - theta2) * (theta1 + theta2));
  return p;
}

EffectiveParams effective_params(const Real2x2& g, const Real2x2& xi, double relative_tolerance) {
  const Real2x2 gx = g.cwiseProduct(xi);
  auto matched = [&](double a, double b, const char* name) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale > 0.0 && std::abs(a - b) > relative_tolerance * scale) {
      throw InconsistentSymmetry(std::string(name) + " products disagree: " + std::to_string(a) +
                                 " vs " + std::to_string(b));
    }
    return 0.5 * (a + b);
  };
  const double theta1 = matched(gx(0, 0), gx(1, 1), "Theta1");
  const double theta2 = matched(gx(0, 1), gx(1, 0), "Theta2");
  return EffectiveParams::from_thetas(theta1, theta2);
}

DrivePlan drive_frequencies(double delta, const std::array<double, 2>& nu) {
  if (!(delta > std::max(nu[0], nu[1]))) {
    throw NegativeDriveFrequency("red-sideband drive needs delta > max(nu)");
  }
  DrivePlan plan;
  plan.omega_d << delta - nu[0], delta + nu[1], delta + nu[0], delta - nu[1];
  return plan;
}

Operator build_H0(const SystemParams& params, const CompositeSpace& space) {
  require_canonical(space);
  const Locals ops(space);
  Operator h = Operator::zero(space);
  for (int k = 0; k < 2; ++k) {
    h += (0.5 * params.delta) * embed(ops.sz, qubit_factor(k), space);
    h += params.nu[k] * embed(ops.n[k], mode_factor(k), space);
  }
  return h;
}

Operator build_HI(const SystemParams& params, const CompositeSpace& space) {
  require_canonical(space);
  const Locals ops(space);
  const Operator sx = pauli(Pauli::x);
  Operator h = Operator::zero(space);
  for (int q = 0; q < 2; ++q) {
    for (int l = 0; l < 2; ++l) {
      const Operator x = ops.a[l] + ops.ad[l];
      h += params.g(q, l) * qubit_mode(space, q, sx, l, x);
    }
  }
  return h;
}

Operator build_Hd(const SystemParams& params, const DrivePlan& plan, double t,
                  const CompositeSpace& space) {
  require_canonical(space);
  const Operator sz = pauli(Pauli::z);
  Operator h = Operator::zero(space);
  for (int q = 0; q < 2; ++q) {
    double c = 0.0;
    for (int l = 0; l < 2; ++l) c -= params.xi(q, l) * plan.omega_d(q, l) * std::cos(plan.omega_d(q, l) * t);
    h += c * embed(sz, qubit_factor(q), space);
  }
  return h;
}

TimeDependentHamiltonian interaction_picture_generator(const SystemParams& params,
                                                       const DrivePlan& plan,
                                                       const CompositeSpace& space) {
  require_canonical(space);
  const Locals ops(space);
  const double delta = params.delta;
  const double max_freq =
      std::max(delta + std::max(params.nu[0], params.nu[1]), plan.omega_d.maxCoeff());
  TimeDependentHamiltonian h(space, max_freq);
  for (int q = 0; q < 2; ++q) {
    for (int l = 0; l < 2; ++l) {
      const double g = params.g(q, l);
      const double nu = params.nu[l];
      h.add_term(label("sp", q, "ad", l), qubit_mode(space, q, ops.sp, l, ops.ad[l]),
                 [=](double t) { return g * std::exp(kI * ((delta + nu) * t)); });
      h.add_term(label("sp", q, "a", l), qubit_mode(space, q, ops.sp, l, ops.a[l]),
                 [=](double t) { return g * std::exp(kI * ((delta - nu) * t)); });
      h.add_term(label("sm", q, "ad", l), qubit_mode(space, q, ops.sm, l, ops.ad[l]),
                 [=](double t) { return g * std::exp(-kI * ((delta - nu) * t)); });
      h.add_term(label("sm", q, "a", l), qubit_mode(space, q, ops.sm, l, ops.a[l]),
                 [=](double t) { return g * std::exp(-kI * ((delta + nu) * t)); });
    }
    const double x0 = params.xi(q, 0), x1 = params.xi(q, 1);
    const double w0 = plan.omega_d(q, 0), w1 = plan.omega_d(q, 1);
    h.add_term("sz" + std::to_string(q + 1), embed(ops.sz, qubit_factor(q), space),
               [=](double t) -> Complex {
                 return -(x0 * w0 * std::cos(w0 * t) + x1 * w1 * std::cos(w1 * t));
               });
  }
  return h;
}

Operator build_interaction_picture_H(const SystemParams& params, const DrivePlan& plan, double t,
                                     const CompositeSpace& space) {
  return interaction_picture_generator(params, plan, space).at(t);
}

TimeDependentHamiltonian first_order_generator(const SystemParams& params, const DrivePlan& plan,
                                               const CompositeSpace& space) {
  require_canonical(space);
  const Locals ops(space);
  const double delta = params.delta;
  const double max_freq = delta + std::max(params.nu[0], params.nu[1]) + plan.omega_d.maxCoeff();
  TimeDependentHamiltonian h(space, max_freq);
  for (int q = 0; q < 2; ++q) {
    const double x0 = params.xi(q, 0), x1 = params.xi(q, 1);
    const double w0 = plan.omega_d(q, 0), w1 = plan.omega_d(q, 1);
    // 1 - sum_l xi_l (e^{i w t} - e^{-i w t}) = 1 - 2i sum_l xi_l sin(w t)
    auto bracket = [=](double t) {
      return Complex{1.0, 0.0} - 2.0 * kI * (x0 * std::sin(w0 * t) + x1 * std::sin(w1 * t));
    };
    for (int j = 0; j < 2; ++j) {
      const double g = params.g(q, j);
      const double nu = params.nu[j];
      auto up_create = [=](double t) { return g * std::exp(kI * ((delta + nu) * t)) * bracket(t); };
      auto up_destroy = [=](double t) { return g * std::exp(kI * ((delta - nu) * t)) * bracket(t); };
      h.add_term(label("sp", q, "ad", j), qubit_mode(space, q, ops.sp, j, ops.ad[j]), up_create);
      h.add_term(label("sp", q, "a", j), qubit_mode(space, q, ops.sp, j, ops.a[j]), up_destroy);
      h.add_term(label("sm", q, "a", j), qubit_mode(space, q, ops.sm, j, ops.a[j]),
                 [=](double t) { return std::conj(up_create(t)); });
      h.add_term(label("sm", q, "ad", j), qubit_mode(space, q, ops.sm, j, ops.ad[j]),
                 [=](double t) { return std::conj(up_destroy(t)); });
    }
  }
  return h;
}

Operator build_first_order_H(const SystemParams& params, const DrivePlan& plan, double t,
                             const CompositeSpace& space) {
  return first_order_generator(params, plan, space).at(t);
}

Operator build_effective_H(const Real2x2& g, const Real2x2& xi, const CompositeSpace& space) {
  require_canonical(space);
  const Locals ops(space);
  const Real2x2 gx = g.cwiseProduct(xi);
  Operator up = gx(0, 0) * qubit_mode(space, 0, ops.sp, 0, ops.a[0]);
  up += gx(0, 1) * qubit_mode(space, 0, ops.sp, 1, ops.ad[1]);
  up += gx(1, 0) * qubit_mode(space, 1, ops.sp, 0, ops.ad[0]);
  up += gx(1, 1) * qubit_mode(space, 1, ops.sp, 1, ops.a[1]);
  return up + up.adjoint();
}

Operator build_effective_H(const EffectiveParams& effective, const CompositeSpace& space) {
  Real2x2 gx;
  gx << effective.theta1, effective.theta2, effective.theta2, effective.theta1;
  return build_effective_H(gx, Real2x2::Ones(), space);
}

Operator build_transformed_H(const EffectiveParams& effective, const CompositeSpace& space) {
  require_canonical(space);
  const Locals ops(space);
  Operator up = qubit_mode(space, 0, ops.sp, 0, ops.a[0]);
  up += qubit_mode(space, 1, ops.sp, 1, ops.a[1]);
  up *= effective.g_eff;
  return up + up.adjoint();
}

FluxQubit flux_qubit_H(double epsilon, double gap) {
  const Operator sz = pauli(Pauli::z);
  const Operator sx = pauli(Pauli::x);
  const double omega_q = std::hypot(epsilon, gap);
  const double theta = std::atan2(gap, epsilon);
  Operator h = (-0.5 * epsilon) * sz + (-0.5 * gap) * sx;
  Operator coupling = std::cos(theta) * sz - std::sin(theta) * sx;
  Operator diag = (0.5 * omega_q) * sz;
  return FluxQubit{std::move(h), omega_q, theta, std::move(coupling), std::move(diag)};
}

}  // namespace tmsv
