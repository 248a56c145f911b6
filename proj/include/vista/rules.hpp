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

#ifndef VISTA__RULES_HPP_
#define VISTA__RULES_HPP_

#include "vista/clearance.hpp"
#include "vista/findings.hpp"
#include "vista/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vista::rules
{

enum class ContextClass : std::uint8_t {
  static_obstacle,
  stopped_or_parked_vehicle,
  pedestrian_facing_traffic,
  moving_tsv,
  pedestrian_facing_away,
  cyclist,
  pmd_rider,
  lead_road_user,
  lead_obstacle,
};

std::string_view to_string(ContextClass context);
std::optional<ContextClass> parse_context(std::string_view text);

/// Stop position associated with a traffic light controller. The VUT
/// crosses it when its front passes the line along `approach_heading`.
struct StopLine
{
  std::string controller_id;
  GeoPosition position{};
  HeadingDeg approach_heading{};
};

struct RuleSet
{
  std::map<ContextClass, double> lateral{
    {ContextClass::static_obstacle, 0.5},
    {ContextClass::stopped_or_parked_vehicle, 1.0},
    {ContextClass::pedestrian_facing_traffic, 1.0},
    {ContextClass::moving_tsv, 1.5},
    {ContextClass::pedestrian_facing_away, 1.5},
    {ContextClass::cyclist, 1.5},
    {ContextClass::pmd_rider, 1.5},
  };
  double longitudinal{2.0};
  double speed_limit{40.0 / 3.6};
  double speed_tolerance{0.1};
  double decel_limit{-8.0};
  double stopped_speed_epsilon{0.1};
  /// Closing-velocity attribution of clearance incursions to the other party.
  bool attribution{true};
  std::vector<StopLine> stop_lines;
  VehicleProfile vehicle{VehicleProfile::for_class(VehicleClass::class3)};

  /// Throws Error{invalid_argument} for a non-positive threshold.
  void check() const;
  double lateral_threshold(ContextClass context) const;
};

/// Reads a JSON override document:
///
///   { "default": {...}, "testcases": { "<testcase_id>": {...} } }
///
/// Each block may set "lateral" (context -> m), "longitudinal", "speed_limit",
/// "speed_tolerance", "decel_limit", "stopped_speed_epsilon", "attribution",
/// "vehicle" {"class", "length", "width", "cog_forward_offset"} and
/// "stop_lines" [{"controller", "lat", "lon", "approach_heading"}]. The
/// testcase block applies after the default block. Each applied key is
/// logged as a RuleOverride finding. Throws Error{invalid_argument}.
RuleSet parse_rule_set(
  std::string_view json_text, std::string_view testcase_id, std::vector<Finding> * log = nullptr);

enum class Outcome : std::uint8_t { pass, fail, warning, not_applicable };
enum class Attribution : std::uint8_t { vut_action, other_party, undetermined };

std::string_view to_string(Outcome outcome);
std::string_view to_string(Attribution attribution);

struct StepRange
{
  std::int64_t first{};
  std::int64_t last{};
};

struct RuleVerdict
{
  std::string rule_id;
  std::string entity_id;
  std::optional<ContextClass> context;
  Outcome outcome{Outcome::not_applicable};
  std::optional<double> extremum;
  std::string unit;
  std::optional<double> threshold;
  std::optional<StepRange> offending;
  Attribution attribution{Attribution::undetermined};
  std::string note;
};

inline constexpr std::string_view kLateralRule = "lateral_clearance";
inline constexpr std::string_view kLongitudinalRule = "longitudinal_clearance";
inline constexpr std::string_view kSpeedRule = "speed_limit";
inline constexpr std::string_view kDecelRule = "deceleration";
inline constexpr std::string_view kTrafficLightRule = "traffic_light";

/// Lateral context per recorded step plus the longitudinal context.
struct EntityContexts
{
  std::map<std::int64_t, ContextClass> lateral;
  ContextClass longitudinal{ContextClass::lead_road_user};
  std::vector<Finding> findings;
};

/// Obstacles are static; vehicles below the stopped epsilon for the whole
/// run are stopped or parked; pedestrians face traffic when their heading is
/// within 90 degrees of the reverse VUT heading. Throws Error{unknown_entity}.
EntityContexts classify_contexts(const Trace & trace, const std::string & entity_id, const RuleSet & rules);

/// Context at one step; throws Error{unknown_entity} when the entity has no
/// record there.
ContextClass classify_context(
  const Trace & trace, const std::string & entity_id, std::int64_t step, const RuleSet & rules);

/// Lateral and longitudinal verdicts for one entity. `lateral_context` maps
/// each sample step to its context. Precondition: non-empty series.
std::vector<RuleVerdict> evaluate_clearances(
  const clearance::ClearanceSeries & series, const EntityContexts & contexts, const RuleSet & rules);

/// Speed limit (fail) and deceleration (warning) verdicts.
std::vector<RuleVerdict> evaluate_kinematics(const Trace & trace, const RuleSet & rules);

std::vector<RuleVerdict> evaluate_traffic_lights(
  const Trace & trace, const RuleSet & rules, std::vector<Finding> * log = nullptr);

struct RunEvaluation
{
  std::string testcase_id;
  int run_id{0};
  std::vector<RuleVerdict> verdicts;
  std::vector<clearance::ClearanceSeries> series;
  std::vector<Finding> findings;
  bool pass{true};
};

/// Every rule on one run. Fixed infrastructure is excluded from clearance
/// checks.
RunEvaluation evaluate_run(const Trace & trace, const RuleSet & rules);

struct Spread
{
  std::string rule_id;
  std::string entity_id;
  std::string unit;
  double min{};
  double max{};
  double mean{};
  int runs{0};
  int failures{0};
};

struct RunOutcome
{
  int run_id{0};
  bool pass{false};
};

struct TestCaseEvaluation
{
  std::string testcase_id;
  int n_required{1};
  int distinct_runs{0};
  std::vector<RunOutcome> runs;
  std::vector<Spread> spreads;
  bool pass{false};
};

/// Passes iff at least n_required distinct runs exist and every run passes.
TestCaseEvaluation aggregate(const std::vector<RunEvaluation> & runs, int n_required);

}  // namespace vista::rules

#endif  // VISTA__RULES_HPP_
