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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace tmsv {

inline constexpr const char* kCsvSchema = "dissipative-tmsv v1";

/// Writes `# dissipative-tmsv v1, columns: a,b,...`, then the column names,
/// then one line per row. Numbers use %.12g in the C locale; every row is
/// flushed so an aborted run leaves a readable prefix.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  void row(const std::vector<double>& values);
  /// Leading string cells (e.g. a curve id) followed by numbers.
  void row(const std::vector<std::string>& labels, const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::vector<std::string> columns_;
};

std::string format_number(double x);

}  // namespace tmsv
