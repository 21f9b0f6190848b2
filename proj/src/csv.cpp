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

#include "tmsv/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace tmsv {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns)
    : out_(path), columns_(std::move(columns)) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  std::string names;
  for (std::size_t i = 0; i < columns_.size(); ++i) names += (i ? "," : "") + columns_[i];
  out_ << "# " << kCsvSchema << ", columns: " << names << '\n' << names << '\n';
  out_.flush();
}

void CsvWriter::row(const std::vector<double>& values) { row({}, values); }

void CsvWriter::row(const std::vector<std::string>& labels, const std::vector<double>& values) {
  if (labels.size() + values.size() != columns_.size()) {
    throw std::invalid_argument("CsvWriter: row width does not match the header");
  }
  std::string line;
  for (const auto& l : labels) line += (line.empty() ? "" : ",") + l;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!line.empty() || i > 0) line += ',';
    line += format_number(values[i]);
  }
  out_ << line << '\n';
  out_.flush();
}

}  // namespace tmsv
