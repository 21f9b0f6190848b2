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

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseLU>

#include "block_engine.hpp"
#include "tmsv/dynamics.hpp"
#include "tmsv/errors.hpp"
#include "tmsv/linalg.hpp"

namespace tmsv {

namespace {

// Singular values below this fraction of the largest count as zero.
constexpr double kNullThreshold = 1e-10;

double rhs_residual(const LindbladModel& model, const Matrix& rho) {
  return rhs(model, rho, 0.0).cwiseAbs().maxCoeff();
}

SteadyStateResult solve_direct(const LindbladModel& model) {
  const Index d = model.space().dimension();
  if (d > kDirectSteadyStateMaxDimension) {
    std::ostringstream msg;
    msg << "direct steady state needs d <= " << kDirectSteadyStateMaxDimension << ", got d = " << d
        << "; use method=evolve";
    throw DimensionTooLarge(msg.str());
  }
  const NullSpace ns = null_space(liouvillian(model), kNullThreshold);
  const Vector v = ns.vectors.col(0);
  Matrix rho = Eigen::Map<const Matrix>(v.data(), d, d);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw NumericalError("direct steady state: null vector has zero trace");
  rho /= tr;
  rho = (0.5 * (rho + rho.adjoint())).eval();

  SteadyStateResult out(DensityMatrix(model.space(), rho, 1e-8));
  out.residual = rhs_residual(model, rho);
  out.smallest_singular_value = ns.singular_values(0);
  if (ns.singular_values.size() > 1) out.second_singular_value = ns.singular_values(1);
  out.null_dimension = ns.dimension;
  if (ns.dimension != 1) {
    out.warnings.push_back("non-unique steady state: null space dimension " + std::to_string(ns.dimension));
  }
  return out;
}

DensityMatrix default_initial(const LindbladModel& model, const std::optional<DensityMatrix>& initial) {
  if (initial) {
    if (!(initial->space() == model.space())) throw std::invalid_argument("steady_state: initial state space mismatch");
    return *initial;
  }
  return DensityMatrix::from_ket(
      Ket::basis(model.space(), std::vector<int>(model.space().num_factors(), 0)));
}

SteadyStateResult solve_sparse(const LindbladModel& model, const std::optional<DensityMatrix>& initial) {
  const DensityMatrix rho0 = default_initial(model, initial);
  detail::BlockEngine engine(model, rho0.matrix());
  SparseMatrix l = engine.stacked_generator();
  const auto off = engine.stacked_offsets();
  // The (0,0) balance equation of block 0 is implied by the others through
  // trace preservation; swap it for the normalisation.
  const Index pivot_row = 0;
  l.prune([&](Index row, Index, const Complex&) { return row != pivot_row; });
  std::vector<Eigen::Triplet<Complex>> trace_row;
  const auto bases = engine.zeros();
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const Index n = bases[b].rows();
    for (Index i = 0; i < n; ++i) trace_row.emplace_back(pivot_row, off[b] + i * n + i, 1.0);
  }
  SparseMatrix t(l.rows(), l.cols());
  t.setFromTriplets(trace_row.begin(), trace_row.end());
  l += t;
  l.makeCompressed();

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(l);
  if (lu.info() != Eigen::Success) {
    throw NumericalError("sparse steady state: factorisation failed (" + lu.lastErrorMessage() + ")");
  }
  Vector rhs_vec = Vector::Zero(l.rows());
  rhs_vec(pivot_row) = 1.0;
  const Vector x = lu.solve(rhs_vec);
  if (lu.info() != Eigen::Success || !x.allFinite()) throw NumericalError("sparse steady state: solve failed");

  auto state = engine.unstack(x);
  engine.hermitize(state);
  auto deriv = engine.zeros();
  engine.rhs(state, 0.0, deriv);
  SteadyStateResult out(DensityMatrix(model.space(), engine.assemble(state), 1e-8));
  out.residual = engine.max_abs(deriv);
  return out;
}

SteadyStateResult solve_by_evolution(const LindbladModel& model, const EvolveOptions& options,
                                     const std::optional<DensityMatrix>& initial) {
  options.validate();
  if (!(options.convergence_tolerance > 0.0)) {
    throw std::invalid_argument("steady_state: convergence_tolerance must be > 0");
  }
  const DensityMatrix rho0 = default_initial(model, initial);

  const double dt_req = (options.dt ? *options.dt : model.default_dt());
  const long steps = std::max(1L, static_cast<long>(std::ceil(options.t_final / dt_req - 1e-9)));
  const double dt = options.t_final / static_cast<double>(steps);

  detail::BlockEngine engine(model, rho0.matrix());
  auto state = engine.split(rho0.matrix());
  auto deriv = engine.zeros();
  double residual = 0.0;
  for (long s = 1; s <= steps; ++s) {
    engine.rk4_step(state, static_cast<double>(s - 1) * dt, dt);
    const double terr = std::abs(engine.trace(state) - 1.0);
    if (!engine.all_finite(state) || !(terr <= options.trace_tolerance)) {
      throw IntegrationDiverged("steady_state: integration diverged", static_cast<double>(s) * dt);
    }
    if (s % options.sample_stride != 0 && s != steps) continue;
    engine.rhs(state, static_cast<double>(s) * dt, deriv);
    residual = engine.max_abs(deriv);
    if (residual < options.convergence_tolerance) {
      SteadyStateResult out(DensityMatrix(model.space(), engine.assemble(state), options.trace_tolerance));
      out.residual = residual;
      out.time_reached = static_cast<double>(s) * dt;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "steady state not reached by t = " << options.t_final << " (residual " << residual << ")";
  throw NotConverged(msg.str(), residual);
}

}  // namespace

Matrix liouvillian(const LindbladModel& model, double t) {
  const Index d = model.space().dimension();
  const Matrix h = model.hamiltonian_at(t).matrix();
  const Matrix id = Matrix::Identity(d, d);
  // vec(A X B) = (B^T (x) A) vec(X) for column stacking.
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index j = 0; j < a.cols(); ++j) {
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
      }
    }
    return out;
  };
  Matrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& j : model.jumps()) {
    const Matrix& a = j.op.matrix();
    const Matrix ada = a.adjoint() * a;
    l += j.rate * (2.0 * kron(a.conjugate(), a) - kron(id, ada) - kron(ada.transpose(), id));
  }
  return l;
}

SteadyStateResult steady_state(const LindbladModel& model, SteadyStateMethod method,
                               const EvolveOptions& options, const std::optional<DensityMatrix>& initial) {
  if (model.is_time_dependent()) {
    throw std::invalid_argument("steady_state: time-dependent generators have no fixed point");
  }
  switch (method) {
    case SteadyStateMethod::direct:
      return solve_direct(model);
    case SteadyStateMethod::sparse:
      return solve_sparse(model, initial);
    case SteadyStateMethod::evolve:
      break;
  }
  return solve_by_evolution(model, options, initial);
}

}  // namespace tmsv
