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

#include "tmsv/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmsv {

namespace {

std::size_t bosonic_factor(const CompositeSpace& space, int mode) {
  int seen = 0;
  for (std::size_t k = 0; k < space.num_factors(); ++k) {
    if (space.factor(k).kind != FactorKind::bosonic) continue;
    if (seen == mode) return k;
    ++seen;
  }
  throw std::invalid_argument("mode index " + std::to_string(mode) + " out of range for " +
                              space.describe());
}

void require_canonical(const CompositeSpace& space) {
  if (space.num_factors() != 4 || space.factor(0).kind != FactorKind::qubit ||
      space.factor(1).kind != FactorKind::qubit) {
    throw std::invalid_argument("populations: expected canonical space, got " + space.describe());
  }
}

double snap_unit_interval(double x) {
  if (x < 0.0 && x > -1e-9) return 0.0;
  if (x > 1.0 && x < 1.0 + 1e-9) return 1.0;
  return x;
}

}  // namespace

Complex trace_product(const SparseMatrix& a, const Matrix& rho) {
  Complex acc{};
  for (Index col = 0; col < a.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(a, col); it; ++it) acc += it.value() * rho(col, it.row());
  }
  return acc;
}

std::pair<Operator, Operator> quadratures(const CompositeSpace& space, int mode) {
  const std::size_t k = bosonic_factor(space, mode);
  const Operator a = annihilation(space.factor(k).cutoff);
  const Operator ad = a.adjoint();
  const double s = 1.0 / std::numbers::sqrt2;
  const Operator x = s * (a + ad);
  const Operator p = (-kI * s) * (a - ad);
  return {embed(x, k, space), embed(p, k, space)};
}

std::pair<Operator, Operator> epr_operators(const CompositeSpace& space) {
  auto [x1, p1] = quadratures(space, 0);
  auto [x2, p2] = quadratures(space, 1);
  return {x1 + x2, p1 - p2};
}

EprVariance::EprVariance(const CompositeSpace& space) : space_(space) {
  const auto [u, v] = epr_operators(space);
  u_ = to_sparse(u.matrix());
  v_ = to_sparse(v.matrix());
  u2_ = (u_ * u_).pruned();
  v2_ = (v_ * v_).pruned();
}

double EprVariance::operator()(const Matrix& rho) const {
  if (rho.rows() != space_.dimension()) throw std::invalid_argument("EprVariance: dimension mismatch");
  const double mu = trace_product(u_, rho).real();
  const double mv = trace_product(v_, rho).real();
  return trace_product(u2_, rho).real() - mu * mu + trace_product(v2_, rho).real() - mv * mv;
}

double EprVariance::operator()(const DensityMatrix& rho) const {
  if (!(rho.space() == space_)) throw std::invalid_argument("EprVariance: space mismatch");
  return (*this)(rho.matrix());
}

double EprVariance::operator()(const Ket& psi) const {
  if (!(psi.space() == space_)) throw std::invalid_argument("EprVariance: space mismatch");
  const Vector& x = psi.amplitudes();
  const Vector ux = u_ * x;
  const Vector vx = v_ * x;
  const double mu = x.dot(ux).real();
  const double mv = x.dot(vx).real();
  return ux.squaredNorm() - mu * mu + vx.squaredNorm() - mv * mv;
}

double epr_variance(const DensityMatrix& rho) { return EprVariance(rho.space())(rho); }
double epr_variance(const Ket& psi) { return EprVariance(psi.space())(psi); }

double ideal_variance(double zeta) {
  if (!(zeta >= 0.0)) throw std::invalid_argument("ideal_variance: zeta must be >= 0");
  return 2.0 * std::exp(-2.0 * zeta);
}

double ideal_variance_from_ratio(double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw std::invalid_argument("ideal_variance: ratio must lie in [0, 1)");
  return 2.0 * (1.0 - ratio) / (1.0 + ratio);
}

bool entanglement_witness(double v) {
  if (!(v >= 0.0)) throw std::invalid_argument("entanglement_witness: V must be >= 0");
  return v < 2.0;
}

double fidelity(const DensityMatrix& rho, const Ket& target) {
  if (!(rho.space() == target.space())) throw std::invalid_argument("fidelity: space mismatch");
  const Vector& psi = target.amplitudes();
  return snap_unit_interval(psi.dot(rho.matrix() * psi).real());
}

namespace {

struct PopulationOps {
  Operator n1, n2, pg1, pg2, pee;
  explicit PopulationOps(const CompositeSpace& space)
      : n1(embed(number(space.factor(2).cutoff), 2, space)),
        n2(embed(number(space.factor(3).cutoff), 3, space)),
        pg1(Operator::zero(space)),
        pg2(Operator::zero(space)),
        pee(Operator::zero(space)) {
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = 1.0;
    Matrix e = Matrix::Zero(2, 2);
    e(1, 1) = 1.0;
    const CompositeSpace q({ModeSpec::qubit()});
    const Operator proj_g(q, g), proj_e(q, e);
    pg1 = embed(proj_g, 0, space);
    pg2 = embed(proj_g, 1, space);
    pee = embed_product(space, {{0, &proj_e}, {1, &proj_e}});
  }
};

}  // namespace

Populations populations(const DensityMatrix& rho) {
  require_canonical(rho.space());
  const PopulationOps ops(rho.space());
  return Populations{expectation(ops.n1, rho).real(), expectation(ops.n2, rho).real(),
                     expectation(ops.pg1, rho).real(), expectation(ops.pg2, rho).real(),
                     expectation(ops.pee, rho).real()};
}

Populations populations(const Ket& psi) { return populations(DensityMatrix::from_ket(psi)); }

ObservableSet::ObservableSet(CompositeSpace space) : space_(std::move(space)) {}

ObservableSet ObservableSet::standard(const CompositeSpace& space, const Ket& target) {
  require_canonical(space);
  ObservableSet set(space);
  const PopulationOps ops(space);
  set.add_epr_variance("V");
  set.add_fidelity("fidelity", target);
  set.add_expectation("n1", ops.n1);
  set.add_expectation("n2", ops.n2);
  set.add_expectation("pg1", ops.pg1);
  set.add_expectation("pg2", ops.pg2);
  return set;
}

void ObservableSet::add_expectation(std::string name, const Operator& op) {
  if (!(op.space() == space_)) throw std::invalid_argument("ObservableSet: space mismatch");
  if (!op.is_hermitian(1e-12)) throw std::invalid_argument("ObservableSet: operator not Hermitian");
  names_.push_back(std::move(name));
  probes_.push_back(Probe{Kind::expectation, to_sparse(op.matrix()), {}});
}

void ObservableSet::add_epr_variance(std::string name) {
  if (!epr_) epr_.emplace(space_);
  names_.push_back(std::move(name));
  probes_.push_back(Probe{Kind::epr_variance, {}, {}});
}

void ObservableSet::add_fidelity(std::string name, const Ket& target) {
  if (!(target.space() == space_)) throw std::invalid_argument("ObservableSet: space mismatch");
  names_.push_back(std::move(name));
  probes_.push_back(Probe{Kind::fidelity, {}, target.amplitudes()});
}

std::vector<double> ObservableSet::evaluate(const Matrix& rho) const {
  std::vector<double> out;
  out.reserve(probes_.size());
  for (const auto& probe : probes_) {
    switch (probe.kind) {
      case Kind::expectation:
        out.push_back(trace_product(probe.op, rho).real());
        break;
      case Kind::epr_variance:
        out.push_back((*epr_)(rho));
        break;
      case Kind::fidelity:
        out.push_back(snap_unit_interval(probe.target.dot(rho * probe.target).real()));
        break;
    }
  }
  return out;
}

}  // namespace tmsv
