// Copyright 2026 The ViSTA Toolkit Authors
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

#ifndef VISTA__FINDINGS_HPP_
#define VISTA__FINDINGS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vista
{

enum class Severity : std::uint8_t { error, warning };

std::string_view to_string(Severity severity);

// Stable finding identifiers. The textual form appears in reports.
enum class FindingCode : std::uint8_t {
  io_failure,
  missing_header,
  unknown_column,
  duplicate_column,
  missing_mandatory_column,
  missing_value,
  malformed_value,
  out_of_range,
  non_monotone_time,
  non_monotone_step,
  duplicate_step,
  non_zero_start_time,
  orphan_step,
  time_mismatch,
  degenerate_shape,
  invalid_file_name,
  non_canonical_file_name,
  missing_vut_file,
  role_file_misnamed,
  perceived_without_truth,
  frequency_too_low,
  jitter_exceeded,
  insufficient_runs,
  duplicate_run,
  mixed_testcases,
  default_footprint,
  missing_heading,
  missing_stop_line_config,
  rule_override,
};

std::string_view to_string(FindingCode code);

struct Location
{
  std::string file;
  std::int64_t row{0};  // 1-based line number, 0 when not row-specific
  std::string column;
};

struct Finding
{
  Severity severity{Severity::error};
  FindingCode code{FindingCode::io_failure};
  std::string message;
  Location location{};
};

class IntegrityReport
{
public:
  void add(Severity severity, FindingCode code, std::string message, Location location = {});
  void append(const std::vector<Finding> & findings);

  const std::vector<Finding> & findings() const { return findings_; }
  bool has_errors() const;
  bool contains(FindingCode code) const;
  std::size_t error_count() const;
  std::size_t warning_count() const;

private:
  std::vector<Finding> findings_;
};

Finding make_finding(
  Severity severity, FindingCode code, std::string message, Location location = {});

}  // namespace vista

#endif  // VISTA__FINDINGS_HPP_
