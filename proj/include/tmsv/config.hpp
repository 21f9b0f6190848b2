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

// JSON run configuration. All rates and frequencies are angular, in 1/us;
// the `units` field must say so explicitly.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tmsv/dynamics.hpp"
#include "tmsv/model.hpp"
#include "tmsv/validation.hpp"

namespace tmsv {

/// Field-level configuration problem; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kUnits = "angular_per_us";

struct InitialStateSpec {
  enum class Kind { vacuum_gg, fock, custom };
  Kind kind = Kind::vacuum_gg;
  int n1 = 0;
  int n2 = 0;
  std::filesystem::path file;  // custom: JSON array of [re, im] in canonical order
};

struct SweepSpec {
  std::vector<double> ratios;
  std::vector<double> kappas;
};

struct ValidateSpec {
  int bogoliubov_cutoff = 16;
  FrameCheckOptions frame;
  RwaCheckOptions rwa;
  double bogoliubov_bound = 1e-4;
  double frame_bound = 1e-6;
  double rwa_bound = 0.02;
};

struct RunConfig {
  nlohmann::json source;  // verbatim input, echoed in every report

  // Dissipation and, when the couplings block is present, the full
  // parameter set of the driven model.
  SystemParams system;
  bool has_couplings = false;
  std::optional<CircuitParams> circuit;

  EffectiveParams effective;
  std::optional<int> cutoff;  // default: tail rule on Theta2/Theta1
  EvolveOptions integrator;
  InitialStateSpec initial;
  SteadyStateMethod steady_method = SteadyStateMethod::evolve;
  std::vector<std::pair<double, double>> fig3_pairs{{20.0, 0.0}, {20.0, 2.0}, {20.0, 20.0}};
  SweepSpec sweep;
  ValidateSpec validate;
  int workers = 1;
};

/// Throws ConfigError with the offending field in the message.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

struct Overrides {
  std::optional<int> cutoff;
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<int> workers;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

/// Cutoff in use: the override, else the smallest N with tail mass <= 1e-4.
int resolved_cutoff(const RunConfig& config);

/// Initial density matrix on the canonical space with the given cutoff.
DensityMatrix initial_state(const InitialStateSpec& spec, const CompositeSpace& space);

}  // namespace tmsv
