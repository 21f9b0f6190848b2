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

#include "tmsv/squeezing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tmsv/errors.hpp"
#include "tmsv/linalg.hpp"

namespace tmsv {

namespace {

std::array<std::size_t, 2> bosonic_factors(const CompositeSpace& space) {
  std::vector<std::size_t> found;
  for (std::size_t k = 0; k < space.num_factors(); ++k) {
    if (space.factor(k).kind == FactorKind::bosonic) found.push_back(k);
  }
  if (found.size() != 2) {
    throw std::invalid_argument("expected exactly two bosonic factors in " + space.describe());
  }
  return {found[0], found[1]};
}

// zeta (a1 a2 - a1^dag a2^dag) on the two-mode space (m1, m2).
Operator squeeze_generator(double zeta, const CompositeSpace& modes) {
  const Operator a1 = annihilation(modes.factor(0).cutoff);
  const Operator a2 = annihilation(modes.factor(1).cutoff);
  const Operator ad1 = a1.adjoint();
  const Operator ad2 = a2.adjoint();
  Operator g = embed_product(modes, {{0, &a1}, {1, &a2}});
  g -= embed_product(modes, {{0, &ad1}, {1, &ad2}});
  g *= zeta;
  return g;
}

const double kMaxZeta = std::atanh(1.0 - 1e-6);

}  // namespace

void SqueezeSpec::validate() const {
  if (!std::isfinite(zeta) || zeta < 0.0) throw std::invalid_argument("zeta must be finite and >= 0");
  if (zeta >= kMaxZeta) throw std::invalid_argument("zeta exceeds atanh(1 - 1e-6)");
  bosonic_factors(space);
}

double tail_mass(double ratio, int cutoff) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw std::invalid_argument("tail_mass: ratio must lie in [0, 1)");
  if (cutoff < 0) throw std::invalid_argument("tail_mass: negative cutoff");
  return std::pow(ratio, 2.0 * (cutoff + 1));
}

int cutoff_for_ratio(double ratio, double tail_tolerance) {
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    throw std::invalid_argument("cutoff_for_ratio: tolerance must lie in (0, 1)");
  }
  int n = 1;
  while (tail_mass(ratio, n) > tail_tolerance) ++n;
  return n;
}

Operator squeeze_operator(const SqueezeSpec& spec) {
  spec.validate();
  const auto modes_idx = bosonic_factors(spec.space);
  const CompositeSpace modes = spec.space.subspace(modes_idx);
  const Operator gen = squeeze_generator(spec.zeta, modes);
  const Operator s(modes, expm(gen.matrix()));
  if (spec.space.num_factors() == 2) return s;
  return embed(s, modes_idx, spec.space);
}

Ket tmsv_state(double zeta, const CompositeSpace& space) {
  SqueezeSpec{zeta, space}.validate();
  if (space.num_factors() != 2) {
    throw std::invalid_argument("tmsv_state: expected a two-mode space, got " + space.describe());
  }
  const int n_max = std::min(space.factor(0).cutoff, space.factor(1).cutoff);
  const double lambda = std::tanh(zeta);
  const double tail = tail_mass(lambda, n_max);
  if (tail > 1e-3) {
    throw CutoffInsufficient("tmsv_state: cutoff " + std::to_string(n_max) +
                             " leaves tail mass " + std::to_string(tail) + " > 1e-3");
  }
  Vector v = Vector::Zero(space.dimension());
  double amp = 1.0 / std::cosh(zeta);
  for (int n = 0; n <= n_max; ++n) {
    v(space.index_of({n, n})) = amp;
    amp *= -lambda;
  }
  return Ket::normalized(space, std::move(v));
}

Ket target_state(double zeta, const CompositeSpace& space) {
  if (space.num_factors() != 4 || space.factor(0).kind != FactorKind::qubit ||
      space.factor(1).kind != FactorKind::qubit) {
    throw std::invalid_argument("target_state: expected canonical space, got " + space.describe());
  }
  const CompositeSpace qubits({ModeSpec::qubit(), ModeSpec::qubit()});
  const CompositeSpace modes({space.factor(2), space.factor(3)});
  return tensor(Ket::basis(qubits, {0, 0}), tmsv_state(zeta, modes));
}

namespace {

// Fixed n1 - n2 = d sector of the two-mode space truncated at m per mode:
// basis |p_k, q_k> = |k + max(d, 0), k + max(-d, 0)>, k = 0 .. m - |d|.
struct Sector {
  int d;
  int m;
  int size() const { return m - std::abs(d) + 1; }
  int p(int k) const { return k + std::max(d, 0); }
  int q(int k) const { return k + std::max(-d, 0); }
};

// exp(zeta (a1 a2 - a1^dag a2^dag)) restricted to one sector; S preserves
// n1 - n2, so this is the whole operator on that sector. The sector
// generator is zeta T with T real antisymmetric tridiagonal; conjugating by
// diag(i^k) turns T into i H with H real symmetric tridiagonal, so
//   S(j, k) = Re(i^(j - k) [V e^{i zeta Lambda} V^T](j, k)),
// which only needs the tridiagonal eigensolver.
Eigen::MatrixXd sector_squeeze(double zeta, const Sector& s) {
  const int n = s.size();
  if (n == 1) return Eigen::MatrixXd::Identity(1, 1);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(static_cast<double>(s.p(k)) * s.q(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const Eigen::ArrayXd phase = zeta * eig.eigenvalues().array();
  const Eigen::MatrixXd c = v * phase.cos().matrix().asDiagonal() * v.transpose();
  const Eigen::MatrixXd sn = v * phase.sin().matrix().asDiagonal() * v.transpose();
  Eigen::MatrixXd out(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      switch (((j - k) % 4 + 4) % 4) {
        case 0: out(j, k) = c(j, k); break;
        case 1: out(j, k) = -sn(j, k); break;
        case 2: out(j, k) = -c(j, k); break;
        default: out(j, k) = sn(j, k); break;
      }
    }
  }
  return out;
}

// Theta1 a_mode + Theta2 a_other^dag from sector `from` into sector `to`
// (d - 1 for mode 1, d + 1 for mode 2).
Eigen::MatrixXd sector_combination(double theta1, double theta2, int mode, const Sector& from,
                                   const Sector& to) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(to.size(), from.size());
  for (int k = 0; k < from.size(); ++k) {
    const int p = from.p(k), q = from.q(k);
    // a_mode lowers its own mode; a_other^dag raises the other one.
    const int lp = mode == 1 ? p - 1 : p, lq = mode == 1 ? q : q - 1;
    const int rp = mode == 1 ? p : p + 1, rq = mode == 1 ? q + 1 : q;
    if (lp >= 0 && lq >= 0) out(std::min(lp, lq), k) += theta1 * std::sqrt(mode == 1 ? p : q);
    if (rp <= to.m && rq <= to.m) out(std::min(rp, rq), k) += theta2 * std::sqrt(mode == 1 ? rq : rp);
  }
  return out;
}

struct InteriorResult {
  double mode1 = 0.0;
  double mode2 = 0.0;
  double tail = 0.0;  // largest amplitude S puts on the top sector rows
};

// Max deviation of S^dag (Theta1 a_mode + Theta2 a_other^dag) S - g_eff a_mode
// over interior states (n1, n2 <= interior) with S exponentiated at cutoff m.
InteriorResult interior_deviation(const EffectiveParams& e, int interior, int m) {
  std::map<int, Eigen::MatrixXd> squeeze;
  for (int d = -interior - 1; d <= interior + 1; ++d) squeeze.emplace(d, sector_squeeze(e.zeta, Sector{d, m}));
  InteriorResult out;
  for (int mode : {1, 2}) {
    double worst = 0.0;
    const int shift = mode == 1 ? -1 : 1;
    for (int d = -interior; d <= interior; ++d) {
      const Sector from{d, m}, to{d + shift, m};
      const Eigen::MatrixXd& s_from = squeeze.at(d);
      const Eigen::MatrixXd dev = squeeze.at(d + shift).transpose() *
                                      sector_combination(e.theta1, e.theta2, mode, from, to) * s_from -
                                  e.g_eff * sector_combination(1.0, 0.0, mode, from, to);
      for (int k = 0; k < from.size(); ++k) {
        if (std::max(from.p(k), from.q(k)) > interior) continue;
        out.tail = std::max(out.tail, s_from.col(k).tail(std::min(8, from.size())).cwiseAbs().maxCoeff());
        for (int j = 0; j < to.size(); ++j) {
          if (std::max(to.p(j), to.q(j)) <= interior) worst = std::max(worst, std::abs(dev(j, k)));
        }
      }
    }
    (mode == 1 ? out.mode1 : out.mode2) = worst;
  }
  return out;
}

}  // namespace

BogoliubovReport bogoliubov_check(const EffectiveParams& effective, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("bogoliubov_check: cutoff must be >= 1");
  const CompositeSpace modes({ModeSpec::bosonic(cutoff), ModeSpec::bosonic(cutoff)});
  const Operator s = squeeze_operator(SqueezeSpec{effective.zeta, modes});
  const Operator sd = s.adjoint();
  const Operator a = annihilation(cutoff);
  const Operator ad = a.adjoint();
  const Operator a1 = embed(a, 0, modes), a2 = embed(a, 1, modes);
  const Operator ad1 = embed(ad, 0, modes), ad2 = embed(ad, 1, modes);

  const Operator lhs1 = sd * (effective.theta1 * a1 + effective.theta2 * ad2) * s;
  const Operator lhs2 = sd * (effective.theta1 * a2 + effective.theta2 * ad1) * s;
  const Matrix dev1 = lhs1.matrix() - effective.g_eff * a1.matrix();
  const Matrix dev2 = lhs2.matrix() - effective.g_eff * a2.matrix();

  BogoliubovReport report;
  report.cutoff = cutoff;
  report.interior_cutoff = std::max(cutoff - 4, 0);
  for (int n1 = 0; n1 <= report.interior_cutoff; ++n1) {
    for (int n2 = 0; n2 <= report.interior_cutoff; ++n2) {
      for (int m1 = 0; m1 <= report.interior_cutoff; ++m1) {
        for (int m2 = 0; m2 <= report.interior_cutoff; ++m2) {
          const Index r = modes.index_of({m1, m2}), c = modes.index_of({n1, n2});
          report.truncated_interior_deviation =
              std::max({report.truncated_interior_deviation, std::abs(dev1(r, c)), std::abs(dev2(r, c))});
        }
      }
    }
  }
  report.boundary_deviation = std::max(max_abs(dev1), max_abs(dev2));

  // Squeezed interior states reach far beyond the cutoff (the amplitudes of
  // S|n, n> fall off like a degree-n polynomial times ratio^k), so the
  // truncated product above is dominated by boundary rows. Grow the working
  // cutoff until S leaves nothing on the top rows of any interior column.
  int m = cutoff + 64;
  InteriorResult dev;
  for (;;) {
    dev = interior_deviation(effective, report.interior_cutoff, m);
    if (dev.tail < 1e-12) break;
    const int next = m + std::max(64, m / 2);
    if (next > kBogoliubovMaxWorkingCutoff) {
      throw NumericalError("bogoliubov_check: squeezed interior states still reach working cutoff " +
                           std::to_string(m));
    }
    m = next;
  }
  report.interior_deviation_mode1 = dev.mode1;
  report.interior_deviation_mode2 = dev.mode2;
  report.working_cutoff = m;
  return report;
}

}  // namespace tmsv
