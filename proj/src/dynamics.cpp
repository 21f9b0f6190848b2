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

#include "tmsv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "block_engine.hpp"
#include "tmsv/errors.hpp"

namespace tmsv {

namespace {

double max_row_sum(const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

void require_space(const CompositeSpace& a, const CompositeSpace& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": space mismatch");
}

void validate_jumps(const CompositeSpace& space, const std::vector<Jump>& jumps) {
  for (const auto& j : jumps) {
    if (!std::isfinite(j.rate) || j.rate < 0.0) {
      throw std::invalid_argument("LindbladModel: jump '" + j.label + "' has a negative rate");
    }
    require_space(space, j.op.space(), "LindbladModel jump");
  }
}

// Steps of equal size covering [0, t_final] with size <= dt.
long step_count(double t_final, double dt) {
  if (t_final == 0.0) return 0;
  return std::max(1L, static_cast<long>(std::ceil(t_final / dt - 1e-9)));
}

}  // namespace

// ---------------------------------------------------------------------------

LindbladModel::LindbladModel(Operator hamiltonian, std::vector<Jump> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  const auto& h = std::get<Operator>(hamiltonian_);
  if (!h.is_hermitian(1e-12)) throw std::invalid_argument("LindbladModel: Hamiltonian is not Hermitian");
  validate_jumps(h.space(), jumps_);
}

LindbladModel::LindbladModel(TimeDependentHamiltonian hamiltonian, std::vector<Jump> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  validate_jumps(std::get<TimeDependentHamiltonian>(hamiltonian_).space(), jumps_);
}

const CompositeSpace& LindbladModel::space() const {
  return std::visit([](const auto& h) -> const CompositeSpace& { return h.space(); }, hamiltonian_);
}

Operator LindbladModel::hamiltonian_at(double t) const {
  if (const auto* h = std::get_if<Operator>(&hamiltonian_)) return *h;
  return std::get<TimeDependentHamiltonian>(hamiltonian_).at(t);
}

double LindbladModel::max_frequency() const {
  double scale = 0.0;
  if (const auto* h = std::get_if<Operator>(&hamiltonian_)) {
    scale = h->matrix().diagonal().cwiseAbs().maxCoeff() + max_row_sum(h->matrix());
  } else {
    scale = std::get<TimeDependentHamiltonian>(hamiltonian_).max_frequency();
  }
  for (const auto& j : jumps_) {
    const SparseMatrix a = to_sparse(j.op.matrix());
    const SparseMatrix ata = SparseMatrix(a.adjoint()) * a;
    scale += 2.0 * j.rate * max_row_sum(Matrix(ata));
  }
  return scale;
}

double LindbladModel::default_dt() const {
  const double w = max_frequency();
  if (!(w > 0.0)) throw std::invalid_argument("default_dt: model has no frequency scale; set dt explicitly");
  return 0.02 / w;
}

std::vector<Jump> standard_jumps(double gamma_r, double gamma_phi, std::array<double, 2> kappa,
                                 const CompositeSpace& space) {
  std::vector<Jump> jumps;
  const Operator sm = pauli(Pauli::minus);
  const Operator sz = pauli(Pauli::z);
  for (std::size_t q = 0; q < 2; ++q) {
    const std::string n = std::to_string(q + 1);
    if (gamma_r > 0.0) jumps.push_back(Jump{gamma_r, embed(sm, q, space), "sigma_minus" + n});
    if (gamma_phi > 0.0) jumps.push_back(Jump{gamma_phi, embed(sz, q, space), "sigma_z" + n});
  }
  for (std::size_t m = 0; m < 2; ++m) {
    if (kappa[m] > 0.0) {
      const std::size_t k = CompositeSpace::kMode1 + m;
      jumps.push_back(Jump{kappa[m], embed(annihilation(space.factor(k).cutoff), k, space),
                           "a" + std::to_string(m + 1)});
    }
  }
  return jumps;
}

std::vector<Jump> standard_jumps(const SystemParams& params, const CompositeSpace& space) {
  return standard_jumps(params.gamma_r, params.gamma_phi, params.kappa, space);
}

Matrix dissipator(const Operator& a, const Matrix& rho) {
  if (rho.rows() != a.dimension() || rho.cols() != a.dimension()) {
    throw std::invalid_argument("dissipator: dimension mismatch");
  }
  const Matrix& m = a.matrix();
  const Matrix ada = m.adjoint() * m;
  return 2.0 * m * rho * m.adjoint() - ada * rho - rho * ada;
}

Matrix dissipator(const Operator& a, const DensityMatrix& rho) {
  require_space(a.space(), rho.space(), "dissipator");
  return dissipator(a, rho.matrix());
}

Matrix rhs(const LindbladModel& model, const Matrix& rho, double t) {
  const Index d = model.space().dimension();
  if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("rhs: dimension mismatch");
  const Matrix h = model.hamiltonian_at(t).matrix();
  Matrix out = -kI * (h * rho - rho * h);
  for (const auto& j : model.jumps()) out += j.rate * dissipator(j.op, rho);
  return out;
}

Matrix rhs(const LindbladModel& model, const DensityMatrix& rho, double t) {
  require_space(model.space(), rho.space(), "rhs");
  return rhs(model, rho.matrix(), t);
}

void EvolveOptions::validate() const {
  if (!std::isfinite(t_final) || t_final < 0.0) throw std::invalid_argument("t_final must be >= 0");
  if (dt && !(*dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
  if (!(trace_tolerance > 0.0)) throw std::invalid_argument("trace_tolerance must be > 0");
}

std::vector<double> Trajectory::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("Trajectory: no column '" + name + "'");
  const auto k = static_cast<std::size_t>(it - names.begin());
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& row : records) out.push_back(row[k]);
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

namespace {

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }
  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

void unite_pattern(UnionFind& uf, const SparseMatrix& m) {
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) uf.unite(it.row(), col);
  }
}

}  // namespace

BlockEngine::BlockEngine(const LindbladModel& model, const Matrix& rho0)
    : dimension_(model.space().dimension()) {
  const Index d = dimension_;
  SparseMatrix heff_sparse(d, d);
  std::vector<SparseMatrix> td_full;
  if (const auto* h = std::get_if<Operator>(&model.hamiltonian())) {
    heff_sparse = to_sparse(h->matrix());
  } else {
    td_ = &std::get<TimeDependentHamiltonian>(model.hamiltonian());
    td_full = td_->sparse_terms();
  }
  std::vector<SparseMatrix> jump_ops;
  std::vector<double> jump_rates;
  for (const auto& j : model.jumps()) {
    if (j.rate == 0.0) continue;
    jump_ops.push_back(to_sparse(j.op.matrix()));
    jump_rates.push_back(j.rate);
    const SparseMatrix ata = SparseMatrix(jump_ops.back().adjoint()) * jump_ops.back();
    heff_sparse -= (kI * j.rate) * ata;
  }
  heff_sparse.prune(Complex{});

  UnionFind uf(d);
  unite_pattern(uf, heff_sparse);
  for (const auto& t : td_full) unite_pattern(uf, t);
  for (Index c = 0; c < d; ++c) {
    for (Index r = 0; r < d; ++r) {
      if (rho0(r, c) != Complex{}) uf.unite(r, c);
    }
  }
  // Every jump must send each block into a single block.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& op : jump_ops) {
      std::map<Index, Index> image;  // source root -> representative row
      for (Index col = 0; col < op.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(op, col); it; ++it) {
          const Index src = uf.find(col);
          auto [pos, inserted] = image.emplace(src, it.row());
          if (!inserted && uf.unite(pos->second, it.row())) changed = true;
        }
      }
    }
  }

  std::map<Index, std::size_t> block_of_root;
  std::vector<std::size_t> block_of(static_cast<std::size_t>(d));
  std::vector<Index> local(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    const Index root = uf.find(i);
    auto [it, inserted] = block_of_root.emplace(root, blocks_.size());
    if (inserted) blocks_.emplace_back();
    block_of[i] = it->second;
    local[i] = static_cast<Index>(blocks_[it->second].size());
    blocks_[it->second].push_back(i);
  }
  const std::size_t nb = blocks_.size();

  auto restrict_diagonal = [&](const SparseMatrix& m) {
    std::vector<std::vector<Eigen::Triplet<Complex>>> trip(nb);
    for (Index col = 0; col < m.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
        const std::size_t b = block_of[col];
        trip[b].emplace_back(local[it.row()], local[col], it.value());
      }
    }
    std::vector<SparseMatrix> out(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const auto n = static_cast<Index>(blocks_[b].size());
      out[b].resize(n, n);
      out[b].setFromTriplets(trip[b].begin(), trip[b].end());
      out[b].makeCompressed();
    }
    return out;
  };
  heff_ = restrict_diagonal(heff_sparse);
  for (const auto& t : td_full) td_terms_.push_back(restrict_diagonal(t));

  for (std::size_t k = 0; k < jump_ops.size(); ++k) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Eigen::Triplet<Complex>>> parts;
    const SparseMatrix& op = jump_ops[k];
    for (Index col = 0; col < op.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(op, col); it; ++it) {
        parts[{block_of[col], block_of[it.row()]}].emplace_back(local[it.row()], local[col], it.value());
      }
    }
    for (auto& [key, trip] : parts) {
      const auto [src, dst] = key;
      JumpBlock jb{2.0 * jump_rates[k], src, dst, {}, {}};
      jb.op.resize(static_cast<Index>(blocks_[dst].size()), static_cast<Index>(blocks_[src].size()));
      jb.op.setFromTriplets(trip.begin(), trip.end());
      jb.op.makeCompressed();
      jb.op_adj = jb.op.adjoint();
      jumps_.push_back(std::move(jb));
    }
  }

  k1_ = zeros();
  k2_ = zeros();
  k3_ = zeros();
  k4_ = zeros();
  stage_ = zeros();
}

BlockEngine::State BlockEngine::zeros() const {
  State s(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto n = static_cast<Index>(blocks_[b].size());
    s[b] = Matrix::Zero(n, n);
  }
  return s;
}

BlockEngine::State BlockEngine::split(const Matrix& rho) const {
  State s = zeros();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& idx = blocks_[b];
    for (std::size_t c = 0; c < idx.size(); ++c) {
      for (std::size_t r = 0; r < idx.size(); ++r) s[b](r, c) = rho(idx[r], idx[c]);
    }
  }
  return s;
}

Matrix BlockEngine::assemble(const State& state) const {
  Matrix rho = Matrix::Zero(dimension_, dimension_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& idx = blocks_[b];
    for (std::size_t c = 0; c < idx.size(); ++c) {
      for (std::size_t r = 0; r < idx.size(); ++r) rho(idx[r], idx[c]) = state[b](r, c);
    }
  }
  return rho;
}

void BlockEngine::rhs(const State& state, double t, State& out) const {
  std::vector<Complex> coeffs;
  if (td_ != nullptr) {
    coeffs.reserve(td_->terms().size());
    for (const auto& term : td_->terms()) coeffs.push_back(term.coefficient(t));
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    scratch_.noalias() = heff_[b] * state[b];
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] != Complex{}) scratch_.noalias() += coeffs[k] * (td_terms_[k][b] * state[b]);
    }
    scratch_ *= -kI;
    out[b] = scratch_ + scratch_.adjoint();
  }
  for (const auto& j : jumps_) {
    scratch_.noalias() = j.op * state[j.src];
    out[j.dst].noalias() += j.two_rate * (scratch_ * j.op_adj);
  }
}

Complex BlockEngine::trace(const State& state) const {
  Complex tr{};
  for (const auto& m : state) tr += m.trace();
  return tr;
}

void BlockEngine::hermitize(State& state) const {
  for (auto& m : state) {
    m = (0.5 * (m + m.adjoint())).eval();
  }
}

bool BlockEngine::all_finite(const State& state) const {
  for (const auto& m : state) {
    if (!m.allFinite()) return false;
  }
  return true;
}

double BlockEngine::max_abs(const State& state) const {
  double best = 0.0;
  for (const auto& m : state) {
    if (m.size() > 0) best = std::max(best, m.cwiseAbs().maxCoeff());
  }
  return best;
}

void BlockEngine::rk4_step(State& y, double t, double dt) {
  const std::size_t nb = blocks_.size();
  rhs(y, t, k1_);
  for (std::size_t b = 0; b < nb; ++b) stage_[b] = y[b] + (0.5 * dt) * k1_[b];
  rhs(stage_, t + 0.5 * dt, k2_);
  for (std::size_t b = 0; b < nb; ++b) stage_[b] = y[b] + (0.5 * dt) * k2_[b];
  rhs(stage_, t + 0.5 * dt, k3_);
  for (std::size_t b = 0; b < nb; ++b) stage_[b] = y[b] + dt * k3_[b];
  rhs(stage_, t + dt, k4_);
  const double w = dt / 6.0;
  for (std::size_t b = 0; b < nb; ++b) {
    y[b] += w * (k1_[b] + 2.0 * k2_[b] + 2.0 * k3_[b] + k4_[b]);
    y[b] = (0.5 * (y[b] + y[b].adjoint())).eval();
  }
}

std::vector<Index> BlockEngine::stacked_offsets() const {
  std::vector<Index> off{0};
  for (const auto& b : blocks_) {
    const auto n = static_cast<Index>(b.size());
    off.push_back(off.back() + n * n);
  }
  return off;
}

BlockEngine::State BlockEngine::unstack(const Vector& x) const {
  const auto off = stacked_offsets();
  State s = zeros();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Index n = s[b].rows();
    s[b] = Eigen::Map<const Matrix>(x.data() + off[b], n, n);
  }
  return s;
}

SparseMatrix BlockEngine::stacked_generator() const {
  if (td_ != nullptr) throw std::invalid_argument("stacked_generator: static models only");
  const auto off = stacked_offsets();
  std::vector<Eigen::Triplet<Complex>> trip;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto n = static_cast<Index>(blocks_[b].size());
    const SparseMatrix& h = heff_[b];
    for (Index col = 0; col < h.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(h, col); it; ++it) {
        const Index r = it.row();
        const Complex v = it.value();
        for (Index k = 0; k < n; ++k) {
          // -i (I (x) Heff) + i (conj(Heff) (x) I)
          trip.emplace_back(off[b] + k * n + r, off[b] + k * n + col, -kI * v);
          trip.emplace_back(off[b] + r * n + k, off[b] + col * n + k, kI * std::conj(v));
        }
      }
    }
  }
  for (const auto& j : jumps_) {
    // 2 rate (conj(op) (x) op) from block src into block dst
    const Index m = j.op.rows();
    const Index n = j.op.cols();
    for (Index c1 = 0; c1 < j.op.outerSize(); ++c1) {
      for (SparseMatrix::InnerIterator it1(j.op, c1); it1; ++it1) {
        for (Index c2 = 0; c2 < j.op.outerSize(); ++c2) {
          for (SparseMatrix::InnerIterator it2(j.op, c2); it2; ++it2) {
            trip.emplace_back(off[j.dst] + it1.row() * m + it2.row(), off[j.src] + c1 * n + c2,
                              j.two_rate * std::conj(it1.value()) * it2.value());
          }
        }
      }
    }
  }
  SparseMatrix l(off.back(), off.back());
  l.setFromTriplets(trip.begin(), trip.end());
  l.makeCompressed();
  return l;
}

}  // namespace detail

// ---------------------------------------------------------------------------

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, const EvolveOptions& options,
                  const ObservableSet* observables, const SampleSink& sink) {
  options.validate();
  require_space(model.space(), rho0.space(), "evolve");
  if (observables != nullptr) require_space(model.space(), observables->space(), "evolve observables");
  const double requested_dt = options.dt ? *options.dt : model.default_dt();
  if (model.is_time_dependent()) {
    const double limit = 0.05 / std::get<TimeDependentHamiltonian>(model.hamiltonian()).max_frequency();
    if (requested_dt > limit * (1.0 + 1e-12)) {
      throw std::invalid_argument("evolve: dt exceeds 0.05 / max_frequency for a time-dependent model");
    }
  }
  const long steps = step_count(options.t_final, requested_dt);
  const double dt = steps > 0 ? options.t_final / static_cast<double>(steps) : requested_dt;

  detail::BlockEngine engine(model, rho0.matrix());
  auto state = engine.split(rho0.matrix());

  Trajectory traj;
  traj.dt = dt;
  traj.steps = steps;
  traj.num_blocks = engine.num_blocks();
  if (observables != nullptr) traj.names = observables->names();
  traj.names.push_back("trace_err");

  auto record = [&](double t) {
    const double terr = std::abs(engine.trace(state) - 1.0);
    const Matrix full = engine.assemble(state);
    std::vector<double> row;
    if (observables != nullptr) row = observables->evaluate(full);
    row.push_back(terr);
    if (sink) sink(t, row);
    traj.times.push_back(t);
    traj.records.push_back(std::move(row));
    if (options.store_states) {
      traj.states.emplace_back(model.space(), full, options.trace_tolerance);
    }
  };

  record(0.0);
  for (long s = 1; s <= steps; ++s) {
    const double t = static_cast<double>(s - 1) * dt;
    engine.rk4_step(state, t, dt);
    const double t_next = static_cast<double>(s) * dt;
    const double terr = std::abs(engine.trace(state) - 1.0);
    if (!engine.all_finite(state) || !(terr <= options.trace_tolerance)) {
      std::ostringstream msg;
      msg << "integration diverged at t = " << t_next << " (|Tr rho - 1| = " << terr << ")";
      throw IntegrationDiverged(msg.str(), t_next);
    }
    traj.max_trace_error = std::max(traj.max_trace_error, terr);
    if (s % options.sample_stride == 0 || s == steps) record(t_next);
  }
  const Matrix final_rho = engine.assemble(state);
  traj.final_trace_error = std::abs(final_rho.trace() - 1.0);
  traj.final_state.emplace(model.space(), final_rho, options.trace_tolerance);
  return traj;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Apply>
PureTrajectory rk4_pure(Apply&& apply_h, const Vector& psi0, double t_final, double dt, int stride) {
  if (!std::isfinite(t_final) || t_final < 0.0) throw std::invalid_argument("evolve_pure: t_final must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_pure: dt must be > 0");
  if (stride < 1) throw std::invalid_argument("evolve_pure: sample_stride must be >= 1");
  const long steps = step_count(t_final, dt);
  const double h = steps > 0 ? t_final / static_cast<double>(steps) : dt;
  PureTrajectory out;
  out.dt = h;
  out.steps = steps;
  Vector psi = psi0;
  Vector k1, k2, k3, k4, tmp;
  auto deriv = [&](double t, const Vector& x, Vector& k) {
    apply_h(t, x, k);
    k *= -kI;
  };
  out.times.push_back(0.0);
  out.states.push_back(psi);
  for (long s = 1; s <= steps; ++s) {
    const double t = static_cast<double>(s - 1) * h;
    deriv(t, psi, k1);
    tmp = psi + (0.5 * h) * k1;
    deriv(t + 0.5 * h, tmp, k2);
    tmp = psi + (0.5 * h) * k2;
    deriv(t + 0.5 * h, tmp, k3);
    tmp = psi + h * k3;
    deriv(t + h, tmp, k4);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % stride == 0 || s == steps) {
      out.times.push_back(static_cast<double>(s) * h);
      out.states.push_back(psi);
    }
  }
  return out;
}

}  // namespace

PureTrajectory evolve_pure(const PureGenerator& h, const Vector& psi0, double t_final, double dt,
                           int sample_stride) {
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("evolve_pure: psi0 not normalised");
  return rk4_pure(h, psi0, t_final, dt, sample_stride);
}

PureTrajectory evolve_pure(const TimeDependentHamiltonian& h, const Ket& psi0, double t_final,
                           double dt, int sample_stride) {
  require_space(h.space(), psi0.space(), "evolve_pure");
  return rk4_pure([&](double t, const Vector& x, Vector& y) { h.apply(t, x, y); }, psi0.amplitudes(),
                  t_final, dt, sample_stride);
}

PureTrajectory evolve_pure(const Operator& h, const Ket& psi0, double t_final, double dt,
                           int sample_stride) {
  require_space(h.space(), psi0.space(), "evolve_pure");
  const SparseMatrix hs = to_sparse(h.matrix());
  return rk4_pure([&](double, const Vector& x, Vector& y) { y.noalias() = hs * x; }, psi0.amplitudes(),
                  t_final, dt, sample_stride);
}

}  // namespace tmsv
