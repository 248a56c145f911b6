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

#ifndef VISTA__APP_HPP_
#define VISTA__APP_HPP_

#include "vista/layout.hpp"
#include "vista/position_array.hpp"
#include "vista/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace vista::app
{

/// Stable across commands.
enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kOperationalError = 2,
};

struct Options
{
  /// Forces the input layout; auto-detected from the path type when unset.
  std::optional<LayoutKind> layout{};
  std::filesystem::path rules{};
  std::filesystem::path tolerances{};
  std::filesystem::path out{"vista-out"};
  int n_required{1};
  double f_min{10.0};
  int jobs{1};
  std::optional<std::uint64_t> seed{};
  AxisOrder axis_order{AxisOrder::lat_lon};
};

/// A directory that is not itself a run folder but holds run files or run
/// folders expands to those entries in name order; other paths pass through.
std::vector<std::filesystem::path> expand_inputs(
  const std::vector<std::filesystem::path> & inputs, std::optional<LayoutKind> hint);

/// Integrity reports per run plus run-set checks per test case. Success iff
/// no error finding; operational error when an input cannot be read.
int cmd_validate(
  const std::vector<std::filesystem::path> & inputs, const Options & options, std::ostream & out,
  std::ostream & err);

/// Verdict reports and plot-ready series per run, one summary per test case.
/// Success iff every test case passes; operational error when an input is
/// unreadable or invalid.
int cmd_evaluate(
  const std::vector<std::filesystem::path> & inputs, const Options & options, std::ostream & out,
  std::ostream & err);

/// Plot-ready series only, without verdicts.
int cmd_report(
  const std::vector<std::filesystem::path> & inputs, const Options & options, std::ostream & out,
  std::ostream & err);

/// Success iff every fidelity metric is within tolerance; operational error
/// when the traces do not overlap enough.
int cmd_fidelity(
  const std::filesystem::path & virtual_path, const std::filesystem::path & reference_path,
  std::optional<double> offset, const Options & options, std::ostream & out, std::ostream & err);

struct GenerateRequest
{
  synth::Case scenario_case{synth::Case::case3};
  std::filesystem::path spec_file{};
  std::optional<int> runs{};
  std::optional<double> target{};
};

/// Writes the synthesized run set under options.out, named by convention.
int cmd_generate(
  const GenerateRequest & request, const Options & options, std::ostream & out, std::ostream & err);

/// Prints the column schema document.
int cmd_schema(std::ostream & out);

/// Scenario overrides: testcase_id, origin {lat, lon}, road_heading,
/// lane_width, tsv_length, tsv_width, tsv_kerb_offset, tsv_station,
/// target_min_lateral_clearance, speed_cap, cruise_speed, overtake_speed,
/// decel_magnitude, sample_rate, runs, seed. Throws Error{invalid_argument}.
synth::ScenarioSpec parse_scenario_spec(std::string_view json_text);

}  // namespace vista::app

#endif  // VISTA__APP_HPP_
