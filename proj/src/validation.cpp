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

#include "tmsv/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <memory>
#include <stdexcept>

#include "tmsv/dynamics.hpp"

namespace tmsv {

namespace {

std::vector<DensityMatrix> sampled_states(const LindbladModel& model, const DensityMatrix& rho0,
                                          const FrameCheckOptions& o) {
  const double interval = o.t_final / o.samples;
  const long per_sample = std::max(1L, static_cast<long>(std::ceil(interval / o.dt - 1e-9)));
  EvolveOptions opts;
  opts.t_final = o.t_final;
  opts.dt = interval / static_cast<double>(per_sample);
  opts.sample_stride = static_cast<int>(per_sample);
  opts.store_states = true;
  auto traj = evolve(model, rho0, opts);
  return std::move(traj.states);
}

}  // namespace

FrameCheckReport transformed_frame_check(const FrameCheckOptions& o) {
  if (o.samples < 1 || !(o.t_final > 0.0) || !(o.dt > 0.0)) {
    throw std::invalid_argument("transformed_frame_check: need samples >= 1, t_final > 0, dt > 0");
  }
  const EffectiveParams eff = EffectiveParams::from_thetas(o.theta1, o.ratio * o.theta1);
  const CompositeSpace space = CompositeSpace::canonical(o.cutoff);
  const Operator s = squeeze_operator(SqueezeSpec{eff.zeta, space});
  const Operator sd = s.adjoint();
  const auto jumps = standard_jumps(o.gamma_r, o.gamma_phi, {0.0, 0.0}, space);

  const Operator h = build_effective_H(eff, space);
  const Operator h_tilde = sd * h * s;
  const Operator h_textbook = build_transformed_H(eff, space);

  const DensityMatrix rho_tilde0 = DensityMatrix::from_ket(Ket::basis(space, {0, 0, 0, 0}));
  const DensityMatrix rho0(space, s.matrix() * rho_tilde0.matrix() * sd.matrix());

  const auto direct = sampled_states(LindbladModel(h, jumps), rho0, o);
  const auto transformed = sampled_states(LindbladModel(h_tilde, jumps), rho_tilde0, o);
  const auto textbook = sampled_states(LindbladModel(h_textbook, jumps), rho_tilde0, o);

  FrameCheckReport report;
  const double interval = o.t_final / o.samples;
  for (int k = 1; k <= o.samples; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const Matrix& rho = direct[i].matrix();
    const double d = trace_distance(rho, s.matrix() * transformed[i].matrix() * sd.matrix());
    const double dt = trace_distance(rho, s.matrix() * textbook[i].matrix() * sd.matrix());
    report.times.push_back(k * interval);
    report.trace_distances.push_back(d);
    report.max_trace_distance = std::max(report.max_trace_distance, d);
    report.max_trace_distance_textbook = std::max(report.max_trace_distance_textbook, dt);
  }
  return report;
}

PureGenerator fast_first_order_generator(const SystemParams& params, const DrivePlan& plan,
                                         const CompositeSpace& space) {
  // Every coupling sigma_+^q a_j^(dag) has at most one nonzero per column,
  // so the whole Hamiltonian is a flat list of (row, col, value, slot)
  // entries whose time dependence comes from one of 16 coefficient slots.
  struct Entry {
    Index row;
    Index col;
    double value;
    int slot;
  };
  auto entries = std::make_shared<std::vector<Entry>>();
  const Operator sp = pauli(Pauli::plus);
  for (int q = 0; q < 2; ++q) {
    for (int j = 0; j < 2; ++j) {
      const std::size_t mode = CompositeSpace::kMode1 + static_cast<std::size_t>(j);
      const Operator a = annihilation(space.factor(mode).cutoff);
      const Operator ad = a.adjoint();
      const Operator* ladder[2] = {&a, &ad};
      for (int k = 0; k < 2; ++k) {
        const Matrix m =
            embed_product(space, {{static_cast<std::size_t>(q), &sp}, {mode, ladder[k]}}).matrix();
        const int slot = 4 * (2 * q + j) + k;  // slot + 2 holds the adjoint
        for (Index c = 0; c < m.cols(); ++c) {
          for (Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) == Complex{}) continue;
            entries->push_back(Entry{r, c, m(r, c).real(), slot});
            entries->push_back(Entry{c, r, m(r, c).real(), slot + 2});
          }
        }
      }
    }
  }
  const SystemParams p = params;
  const DrivePlan d = plan;
  return [entries, p, d](double t, const Vector& x, Vector& y) {
    std::array<Complex, 16> coeff;
    const Complex carrier = std::exp(kI * (p.delta * t));
    for (int q = 0; q < 2; ++q) {
      const Complex bracket =
          Complex{1.0, 0.0} - 2.0 * kI * (p.xi(q, 0) * std::sin(d.omega_d(q, 0) * t) +
                                           p.xi(q, 1) * std::sin(d.omega_d(q, 1) * t));
      for (int j = 0; j < 2; ++j) {
        const Complex phase = std::exp(kI * (p.nu[j] * t));
        const Complex base = p.g(q, j) * carrier * bracket;
        const int slot = 4 * (2 * q + j);
        coeff[slot] = base * std::conj(phase);  // sigma_+ a
        coeff[slot + 1] = base * phase;         // sigma_+ a^dag
        coeff[slot + 2] = std::conj(coeff[slot]);
        coeff[slot + 3] = std::conj(coeff[slot + 1]);
      }
    }
    y.setZero(x.size());
    for (const Entry& e : *entries) y(e.row) += (e.value * coeff[e.slot]) * x(e.col);
  };
}

RwaCheckReport rwa_check(const RwaCheckOptions& o) {
  if (!(o.theta1 > 0.0) || !(o.xi1 > 0.0) || !(o.nu_over_theta > 0.0) || !(o.delta_over_nu > 1.0)) {
    throw std::invalid_argument("rwa_check: invalid scaling options");
  }
  const double theta2 = o.ratio * o.theta1;
  if (!(theta2 > 0.0)) throw std::invalid_argument("rwa_check: ratio must be > 0");

  RwaCheckReport report;
  report.g = o.theta1 / o.xi1;
  report.nu = {o.nu_over_theta * o.theta1, o.nu_over_theta * o.nu2_over_nu1 * o.theta1};
  report.delta = o.delta_over_nu * std::max(report.nu[0], report.nu[1]);
  const double xi2 = theta2 / report.g;
  report.xi << o.xi1, xi2, xi2, o.xi1;
  // Vacuum couples to the symmetric one-excitation state with strength
  // sqrt(2) Theta2; one full exchange cycle.
  report.exchange_period = 2.0 * std::numbers::pi / (std::numbers::sqrt2 * theta2);

  SystemParams params;
  params.delta = report.delta;
  params.nu = report.nu;
  params.g = Real2x2::Constant(report.g);
  params.xi = report.xi;

  const CompositeSpace space = CompositeSpace::canonical(o.cutoff);
  const DrivePlan plan = drive_frequencies(params.delta, params.nu);
  const double max_frequency = first_order_generator(params, plan, space).max_frequency();
  const PureGenerator driven = fast_first_order_generator(params, plan, space);
  const Operator rwa = build_effective_H(params.g, params.xi, space);
  const Ket psi0 = Ket::basis(space, {0, 0, 0, 0});

  report.dt = o.dt_fraction / max_frequency;
  // Sample on a grid commensurate with both runs.
  const int stride = std::max(1, static_cast<int>(std::lround(1e-2 / report.dt)));
  const auto a = evolve_pure(driven, psi0.amplitudes(), report.exchange_period, report.dt, stride);
  const auto b = evolve_pure(rwa, psi0, report.exchange_period, report.dt, stride);
  report.steps = a.steps;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const double overlap = std::norm(b.states[i].dot(a.states[i]));
    report.max_overlap_deficit = std::max(report.max_overlap_deficit, 1.0 - overlap);
  }
  return report;
}

}  // namespace tmsv
