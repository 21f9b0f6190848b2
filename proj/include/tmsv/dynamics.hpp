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

// Lindblad master equation
//
//   d rho/dt = -i[H(t), rho] + sum_j rate_j D[A_j] rho,
//   D[A] rho = 2 A rho A^dag - A^dag A rho - rho A^dag A.
//
// Note the factor 2 on the sandwich term: a qubit with rate gamma relaxes as
// exp(-2 gamma t). Multiply rates by 2 to map onto the common convention
// with 1/2 on the anticommutator.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tmsv/fockspace.hpp"
#include "tmsv/hamiltonian.hpp"
#include "tmsv/model.hpp"
#include "tmsv/observables.hpp"

namespace tmsv {

struct Jump {
  double rate = 0.0;
  Operator op;
  std::string label;
};

class LindbladModel {
 public:
  LindbladModel(Operator hamiltonian, std::vector<Jump> jumps);
  LindbladModel(TimeDependentHamiltonian hamiltonian, std::vector<Jump> jumps);

  const CompositeSpace& space() const;
  bool is_time_dependent() const {
    return std::holds_alternative<TimeDependentHamiltonian>(hamiltonian_);
  }
  Operator hamiltonian_at(double t) const;
  const std::variant<Operator, TimeDependentHamiltonian>& hamiltonian() const { return hamiltonian_; }
  const std::vector<Jump>& jumps() const { return jumps_; }

  /// Largest frequency scale: declared for time-dependent H; for a static H,
  /// max|H_ii| + max_i sum_j |H_ij|, plus the dissipative scale
  /// 2 sum_j rate_j max-row-sum(A_j^dag A_j).
  double max_frequency() const;
  /// 0.02 / max_frequency()
  double default_dt() const;

 private:
  std::variant<Operator, TimeDependentHamiltonian> hamiltonian_;
  std::vector<Jump> jumps_;
};

/// Qubit relaxation and dephasing on both qubits, plus photon loss on
/// resonators with kappa > 0. Jumps with zero rate are omitted.
std::vector<Jump> standard_jumps(const SystemParams& params, const CompositeSpace& space);
std::vector<Jump> standard_jumps(double gamma_r, double gamma_phi, std::array<double, 2> kappa,
                                 const CompositeSpace& space);

/// D[A] rho in the factor-2 convention.
Matrix dissipator(const Operator& a, const DensityMatrix& rho);
Matrix dissipator(const Operator& a, const Matrix& rho);

/// -i[H(t), rho] + sum_j rate_j D[A_j] rho, valid for any square rho.
Matrix rhs(const LindbladModel& model, const Matrix& rho, double t);
Matrix rhs(const LindbladModel& model, const DensityMatrix& rho, double t);

struct EvolveOptions {
  double t_final = 0.0;
  std::optional<double> dt;  // defaults to model.default_dt()
  int sample_stride = 1;     // record every n-th step (plus t = 0 and t_final)
  double trace_tolerance = 1e-8;
  double convergence_tolerance = 1e-6;  // steady_state(..., evolve)
  bool store_states = false;

  void validate() const;
};

struct Trajectory {
  std::vector<std::string> names;  // observable names, then "trace_err"
  std::vector<double> times;
  std::vector<std::vector<double>> records;  // records[i][k]: sample i, name k
  std::vector<DensityMatrix> states;         // when store_states
  std::optional<DensityMatrix> final_state;
  double final_trace_error = 0.0;
  double max_trace_error = 0.0;
  double dt = 0.0;
  long steps = 0;
  std::size_t num_blocks = 1;  // invariant blocks used by the integrator

  /// Column by name; throws std::out_of_range if unknown.
  std::vector<double> column(const std::string& name) const;
};

/// Receives every recorded row (observables then trace_err) as it is taken.
using SampleSink = std::function<void(double t, const std::vector<double>& row)>;

/// Classic fixed-step RK4. After every step rho <- (rho + rho^dag)/2; the trace
/// is never renormalised. Throws IntegrationDiverged when |Tr rho - 1| exceeds
/// options.trace_tolerance or the state becomes non-finite; rows already
/// passed to `sink` stay valid.
Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, const EvolveOptions& options,
                  const ObservableSet* observables = nullptr, const SampleSink& sink = {});

struct PureTrajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  double dt = 0.0;
  long steps = 0;
};

/// y = H(t) x for a caller-supplied Hamiltonian.
using PureGenerator = std::function<void(double t, const Vector& x, Vector& y)>;

/// RK4 on i d psi/dt = H(t) psi; samples every `sample_stride` steps.
PureTrajectory evolve_pure(const PureGenerator& h, const Vector& psi0, double t_final, double dt,
                           int sample_stride);
PureTrajectory evolve_pure(const TimeDependentHamiltonian& h, const Ket& psi0, double t_final,
                           double dt, int sample_stride);
PureTrajectory evolve_pure(const Operator& h, const Ket& psi0, double t_final, double dt,
                           int sample_stride);

enum class SteadyStateMethod { direct, evolve, sparse };

struct SteadyStateResult {
  explicit SteadyStateResult(DensityMatrix rho) : state(std::move(rho)) {}

  DensityMatrix state;
  double residual = 0.0;                  // ||rhs(rho_ss)||_max
  std::optional<double> smallest_singular_value;  // direct only
  std::optional<double> second_singular_value;    // direct only
  Index null_dimension = 1;                       // direct only
  std::vector<std::string> warnings;
  double time_reached = 0.0;                      // evolve only
};

inline constexpr Index kDirectSteadyStateMaxDimension = 64;

/// direct: trace-one null vector of the vectorised generator (SVD), d <= 64.
/// evolve: integrate from `initial` (default |g,g,0,0> on canonical spaces,
/// otherwise the first basis state) until ||rhs||_max < convergence_tolerance,
/// checking every sample_stride steps; NotConverged if t_final is reached.
/// sparse: sparse LU solve of the generator restricted to the invariant
/// blocks reachable from `initial`, one balance equation replaced by
/// Tr rho = 1. Exact up to round-off at any dimension the blocks fit in.
SteadyStateResult steady_state(const LindbladModel& model, SteadyStateMethod method,
                               const EvolveOptions& options,
                               const std::optional<DensityMatrix>& initial = std::nullopt);

/// Column-stacked vec(rho) generator, dimension d^2.
Matrix liouvillian(const LindbladModel& model, double t = 0.0);

}  // namespace tmsv
