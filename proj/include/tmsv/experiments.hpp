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

// Experiment drivers behind the `tmsv` subcommands. Each writes its CSV
// (if any) into the output directory and returns a report; run_command
// adds the config echo, writes <command>_report.json and maps failures to
// exit codes.

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmsv/config.hpp"

namespace tmsv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitValidation = 4;

struct RunReport {
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> warnings;
  int exit_code = kExitOk;
};

/// Columns of the trajectory CSV written by cmd_evolve.
const std::vector<std::string>& trajectory_columns();

RunReport cmd_effective(const RunConfig& config, const std::filesystem::path& out_dir);
RunReport cmd_evolve(const RunConfig& config, const std::filesystem::path& out_dir);
RunReport cmd_steady(const RunConfig& config, const std::filesystem::path& out_dir);
RunReport cmd_fig3(const RunConfig& config, const std::filesystem::path& out_dir);
RunReport cmd_validate(const RunConfig& config, const std::filesystem::path& out_dir);
RunReport cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir);

/// First time after which V stays within `fraction` of its last sampled
/// value; NaN for an empty series.
double preparation_time(const std::vector<double>& times, const std::vector<double>& v,
                        double fraction = 0.05);

/// Loads the config, applies overrides, runs `command` and writes the JSON
/// report. Returns the process exit code; diagnostics go to `log`.
int run_command(const std::string& command, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, const Overrides& overrides, std::ostream& log);

}  // namespace tmsv
