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

#ifndef VISTA__SYNTH_HPP_
#define VISTA__SYNTH_HPP_

#include "vista/model.hpp"
#include "vista/rules.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vista::synth
{

enum class Case : std::uint8_t { case1, case2, case3 };

std::string_view to_string(Case c);
std::optional<Case> parse_case(std::string_view text);

/// Minimum lateral clearance each case reproduces.
double default_target(Case c);

/// Straight two-lane road; the kerb line runs through `origin` along
/// `road_heading`. Lateral offsets are measured rightwards from the kerb.
struct ScenarioSpec
{
  std::string testcase_id{"M2-CL4-S-TST-05-01"};
  GeoPosition origin{1.354088453458461, 103.6957499292194, {}};
  double road_heading{30.0};
  double lane_width{3.3};
  double tsv_length{4.4};
  double tsv_width{1.8};
  double tsv_kerb_offset{0.5};
  /// Along-road position of the parked vehicle's centre.
  double tsv_station{95.0};
  VehicleProfile vut{VehicleProfile::for_class(VehicleClass::class3)};
  /// Overrides the case default when set.
  std::optional<double> target_min_lateral_clearance{};
  double speed_cap{40.0 / 3.6};
  double cruise_speed{10.5};
  double cruise_jitter{0.3};
  double overtake_speed{6.0};
  double decel_magnitude{8.5};
  double lane_change_length{20.0};
  /// Shorter lateral transition used when pulling out from a standstill.
  double pull_out_length{12.0};
  /// Longitudinal margin around the overlap during which the VUT holds its
  /// peak lateral offset.
  double plateau_margin{3.0};
  double sample_rate{10.0};
  int runs{10};
  std::uint64_t seed{1};
};

/// One run. Deterministic in (spec, case, run_id). Throws
/// Error{infeasible_spec}.
Trace synthesize(const ScenarioSpec & spec, Case c, int run_id = 1);

/// Runs 1..spec.runs.
std::vector<Trace> synthesize_runs(const ScenarioSpec & spec, Case c);

/// Content delayed by `time_shift` (the first state is held), then Gaussian
/// noise: per-axis planar position noise and speed noise. Timestamps, steps
/// and the environment are unchanged.
Trace perturb(
  const Trace & trace, double position_sigma, double speed_sigma, double time_shift,
  std::uint64_t seed);

/// A VUT driving straight in its lane past (or behind) one entity whose
/// minimum clearance in the matching axis equals `clearance`. Lateral
/// contexts place the entity alongside on the kerb side; lead_road_user and
/// lead_obstacle place it ahead in the lane.
Trace synthesize_probe(rules::ContextClass context, double clearance, double sample_rate = 10.0);

}  // namespace vista::synth

#endif  // VISTA__SYNTH_HPP_
