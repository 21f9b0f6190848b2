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

// Block-diagonal Lindblad propagation.
//
// The basis is partitioned into blocks such that the Hamiltonian (and every
// A^dag A) maps each block into itself, every jump operator maps each block
// into a single block, and the initial state is block diagonal. Under those
// conditions the generator preserves block-diagonal form exactly, so only
// the diagonal blocks are stored. For the sideband models this recovers the
// conserved excitation-imbalance sectors; when no structure exists the
// partition degenerates to one dense block.

#pragma once

#include <vector>

#include "tmsv/dynamics.hpp"

namespace tmsv::detail {

class BlockEngine {
 public:
  using State = std::vector<Matrix>;

  BlockEngine(const LindbladModel& model, const Matrix& rho0);

  std::size_t num_blocks() const { return blocks_.size(); }
  Index dimension() const { return dimension_; }

  State split(const Matrix& rho) const;
  Matrix assemble(const State& state) const;
  State zeros() const;

  /// out = L(t) state. Assumes `state` Hermitian blockwise.
  void rhs(const State& state, double t, State& out) const;

  Complex trace(const State& state) const;
  void hermitize(State& state) const;
  bool all_finite(const State& state) const;
  double max_abs(const State& state) const;

  /// One classic RK4 step of size dt followed by hermitisation.
  void rk4_step(State& state, double t, double dt);

  /// Sparse generator acting on the concatenated column-major vec(block)
  /// coordinates. Static models only.
  SparseMatrix stacked_generator() const;
  /// Offset of each block's vec in the stacked vector; back() is the length.
  std::vector<Index> stacked_offsets() const;
  State unstack(const Vector& x) const;

 private:
  struct JumpBlock {
    double two_rate;
    std::size_t src;
    std::size_t dst;
    SparseMatrix op;      // dst x src
    SparseMatrix op_adj;  // src x dst
  };

  Index dimension_ = 0;
  std::vector<std::vector<Index>> blocks_;
  std::vector<SparseMatrix> heff_;  // static H - i sum rate A^dag A, per block
  const TimeDependentHamiltonian* td_ = nullptr;
  std::vector<std::vector<SparseMatrix>> td_terms_;  // [term][block]
  std::vector<JumpBlock> jumps_;

  // RK4 scratch
  State k1_, k2_, k3_, k4_, stage_;
  mutable Matrix scratch_;
};

}  // namespace tmsv::detail
