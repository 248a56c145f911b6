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

#include "vista/findings.hpp"

#include <algorithm>
#include <utility>

namespace vista
{

std::string_view to_string(Severity severity)
{
  return severity == Severity::error ? "error" : "warning";
}

std::string_view to_string(FindingCode code)
{
  switch (code) {
    case FindingCode::io_failure: return "IoFailure";
    case FindingCode::missing_header: return "MissingHeader";
    case FindingCode::unknown_column: return "UnknownColumn";
    case FindingCode::duplicate_column: return "DuplicateColumn";
    case FindingCode::missing_mandatory_column: return "MissingMandatoryColumn";
    case FindingCode::missing_value: return "MissingValue";
    case FindingCode::malformed_value: return "MalformedValue";
    case FindingCode::out_of_range: return "OutOfRange";
    case FindingCode::non_monotone_time: return "NonMonotoneTime";
    case FindingCode::non_monotone_step: return "NonMonotoneStep";
    case FindingCode::duplicate_step: return "DuplicateStep";
    case FindingCode::non_zero_start_time: return "NonZeroStartTime";
    case FindingCode::orphan_step: return "OrphanStep";
    case FindingCode::time_mismatch: return "TimeMismatch";
    case FindingCode::degenerate_shape: return "DegenerateShape";
    case FindingCode::invalid_file_name: return "InvalidFileName";
    case FindingCode::non_canonical_file_name: return "NonCanonicalFileName";
    case FindingCode::missing_vut_file: return "MissingVutFile";
    case FindingCode::role_file_misnamed: return "RoleFileMisnamed";
    case FindingCode::perceived_without_truth: return "PerceivedWithoutTruth";
    case FindingCode::frequency_too_low: return "FrequencyTooLow";
    case FindingCode::jitter_exceeded: return "JitterExceeded";
    case FindingCode::insufficient_runs: return "InsufficientRuns";
    case FindingCode::duplicate_run: return "DuplicateRun";
    case FindingCode::mixed_testcases: return "MixedTestCases";
    case FindingCode::default_footprint: return "DefaultFootprint";
    case FindingCode::missing_heading: return "MissingHeading";
    case FindingCode::missing_stop_line_config: return "MissingStopLineConfig";
    case FindingCode::rule_override: return "RuleOverride";
  }
  return "Unknown";
}

Finding make_finding(Severity severity, FindingCode code, std::string message, Location location)
{
  return Finding{severity, code, std::move(message), std::move(location)};
}

void IntegrityReport::add(
  Severity severity, FindingCode code, std::string message, Location location)
{
  findings_.push_back(make_finding(severity, code, std::move(message), std::move(location)));
}

void IntegrityReport::append(const std::vector<Finding> & findings)
{
  findings_.insert(findings_.end(), findings.begin(), findings.end());
}

bool IntegrityReport::has_errors() const { return error_count() > 0; }

bool IntegrityReport::contains(FindingCode code) const
{
  return std::any_of(
    findings_.begin(), findings_.end(), [code](const Finding & f) { return f.code == code; });
}

std::size_t IntegrityReport::error_count() const
{
  return static_cast<std::size_t>(std::count_if(
    findings_.begin(), findings_.end(),
    [](const Finding & f) { return f.severity == Severity::error; }));
}

std::size_t IntegrityReport::warning_count() const
{
  return findings_.size() - error_count();
}

}  // namespace vista
