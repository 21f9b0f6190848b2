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

#pragma once

#include <stdexcept>
#include <string>

namespace tmsv {

/// Base class for numerical failures (integration blow-up, non-convergence).
/// Configuration and argument errors use std::invalid_argument subclasses.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Theta2 >= Theta1: the squeeze parameter atanh(Theta2/Theta1) is undefined.
class UnsqueezableConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The coupling-drive products that should define Theta1 (or Theta2) disagree.
class InconsistentSymmetry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A red-sideband drive frequency delta - nu would be <= 0.
class NegativeDriveFrequency : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fock cutoff too small for the requested squeezing (tail mass too large).
class CutoffInsufficient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Direct steady-state solve requested on a space that is too large.
class DimensionTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntegrationDiverged : public NumericalError {
 public:
  IntegrationDiverged(const std::string& what, double time)
      : NumericalError(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class NotConverged : public NumericalError {
 public:
  NotConverged(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace tmsv
