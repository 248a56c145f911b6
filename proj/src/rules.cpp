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

#include "vista/rules.hpp"

#include "vista/error.hpp"
#include "vista/geo.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <unordered_map>
#include <utility>

namespace vista::rules
{

namespace
{

using Json = nlohmann::json;
using clearance::ClearanceSample;
using clearance::ClearanceSeries;

constexpr std::array<std::pair<ContextClass, std::string_view>, 9> kContextNames{{
  {ContextClass::static_obstacle, "static_obstacle"},
  {ContextClass::stopped_or_parked_vehicle, "stopped_or_parked_vehicle"},
  {ContextClass::pedestrian_facing_traffic, "pedestrian_facing_traffic"},
  {ContextClass::moving_tsv, "moving_tsv"},
  {ContextClass::pedestrian_facing_away, "pedestrian_facing_away"},
  {ContextClass::cyclist, "cyclist"},
  {ContextClass::pmd_rider, "pmd_rider"},
  {ContextClass::lead_road_user, "lead_road_user"},
  {ContextClass::lead_obstacle, "lead_obstacle"},
}};

Finding override_note(const std::string & key, const Json & value, std::string_view scope)
{
  return make_finding(
    Severity::warning, FindingCode::rule_override,
    std::string(scope) + " override " + key + " = " + value.dump());
}

double number_value(const Json & value, const std::string & key)
{
  if (!value.is_number()) {
    throw Error(Errc::invalid_argument, "rule '" + key + "' must be a number");
  }
  return value.get<double>();
}

void apply_block(RuleSet & rules, const Json & block, std::string_view scope, std::vector<Finding> * log)
{
  if (!block.is_object()) {
    throw Error(Errc::invalid_argument, "rule block '" + std::string(scope) + "' must be an object");
  }
  auto logged = [&](const std::string & key, const Json & value) {
    if (log != nullptr) {
      log->push_back(override_note(key, value, scope));
    }
  };
  for (const auto & [key, value] : block.items()) {
    if (key == "lateral") {
      if (!value.is_object()) {
        throw Error(Errc::invalid_argument, "'lateral' must map contexts to thresholds");
      }
      for (const auto & [name, threshold] : value.items()) {
        const auto context = parse_context(name);
        if (!context) {
          throw Error(Errc::invalid_argument, "unknown context '" + name + "'");
        }
        rules.lateral[*context] = number_value(threshold, "lateral." + name);
        logged("lateral." + name, threshold);
      }
    } else if (key == "longitudinal") {
      rules.longitudinal = number_value(value, key);
      logged(key, value);
    } else if (key == "speed_limit") {
      rules.speed_limit = number_value(value, key);
      logged(key, value);
    } else if (key == "speed_tolerance") {
      rules.speed_tolerance = number_value(value, key);
      logged(key, value);
    } else if (key == "decel_limit") {
      rules.decel_limit = number_value(value, key);
      logged(key, value);
    } else if (key == "stopped_speed_epsilon") {
      rules.stopped_speed_epsilon = number_value(value, key);
      logged(key, value);
    } else if (key == "attribution") {
      if (!value.is_boolean()) {
        throw Error(Errc::invalid_argument, "'attribution' must be a boolean");
      }
      rules.attribution = value.get<bool>();
      logged(key, value);
    } else if (key == "vehicle") {
      if (!value.is_object()) {
        throw Error(Errc::invalid_argument, "'vehicle' must be an object");
      }
      VehicleClass cls = rules.vehicle.vehicle_class;
      if (value.contains("class")) {
        const auto parsed = parse_vehicle_class(value.at("class").get<std::string>());
        if (!parsed) {
          throw Error(Errc::invalid_argument, "unknown vehicle class");
        }
        cls = *parsed;
      }
      VehicleProfile base = value.contains("class") ? VehicleProfile::for_class(cls) : rules.vehicle;
      const double length = value.contains("length") ? number_value(value.at("length"), "vehicle.length") : base.length;
      const double width = value.contains("width") ? number_value(value.at("width"), "vehicle.width") : base.width;
      VehicleProfile profile = VehicleProfile::rectangle(cls, length, width);
      profile.cog_forward_offset = value.contains("cog_forward_offset")
                                     ? number_value(value.at("cog_forward_offset"), "vehicle.cog_forward_offset")
                                     : base.cog_forward_offset;
      rules.vehicle = profile;
      logged(key, value);
    } else if (key == "stop_lines") {
      if (!value.is_array()) {
        throw Error(Errc::invalid_argument, "'stop_lines' must be an array");
      }
      rules.stop_lines.clear();
      for (const auto & entry : value) {
        StopLine line;
        line.controller_id = entry.at("controller").get<std::string>();
        line.position.lat = number_value(entry.at("lat"), "stop_lines.lat");
        line.position.lon = number_value(entry.at("lon"), "stop_lines.lon");
        line.approach_heading = HeadingDeg(number_value(entry.at("approach_heading"), "stop_lines.approach_heading"));
        rules.stop_lines.push_back(std::move(line));
      }
      logged(key, value);
    } else {
      throw Error(Errc::invalid_argument, "unknown rule key '" + key + "'");
    }
  }
}

struct Episode
{
  std::size_t first{};
  std::size_t last{};
  Attribution attribution{Attribution::vut_action};
};

struct Axis
{
  std::string_view rule;
  bool (*applicable)(const ClearanceSample &);
  double (*value)(const ClearanceSample &);
};

RuleVerdict evaluate_axis(
  const ClearanceSeries & series, const Axis & axis,
  const std::function<ContextClass(const ClearanceSample &)> & context_of, const RuleSet & rules)
{
  RuleVerdict verdict;
  verdict.rule_id = std::string(axis.rule);
  verdict.entity_id = series.entity_id;
  verdict.unit = "m";

  std::vector<Episode> episodes;
  std::optional<Episode> open;
  double worst_margin = std::numeric_limits<double>::infinity();
  double minimum = std::numeric_limits<double>::infinity();

  auto threshold_of = [&](ContextClass c) {
    return axis.rule == kLateralRule ? rules.lateral_threshold(c) : rules.longitudinal;
  };

  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const auto & s = series.samples[i];
    const bool usable = axis.applicable(s);
    const double value = usable ? axis.value(s) : 0.0;
    const ContextClass context = context_of(s);
    const double threshold = threshold_of(context);
    if (usable) {
      minimum = std::min(minimum, value);
      if (value - threshold < worst_margin) {
        worst_margin = value - threshold;
        verdict.context = context;
        verdict.threshold = threshold;
      }
    }
    const bool inside = usable && value < threshold;
    if (inside && !open) {
      Episode e{i, i, Attribution::vut_action};
      // The other party initiated the incursion when it was closing faster.
      if (rules.attribution && s.entity_closing > 0.0 && s.entity_closing > s.vut_closing) {
        e.attribution = Attribution::other_party;
      }
      open = e;
    }
    if (inside) {
      open->last = i;
      if (value < 0.0) {
        open->attribution = Attribution::vut_action;
      }
    }
    if (!inside && open) {
      episodes.push_back(*open);
      open.reset();
    }
  }
  if (open) {
    episodes.push_back(*open);
  }

  if (!std::isfinite(minimum)) {
    verdict.outcome = Outcome::not_applicable;
    verdict.context = context_of(series.samples.front());
    verdict.threshold = threshold_of(*verdict.context);
    verdict.note = "projections never overlap on the orthogonal axis";
    return verdict;
  }
  verdict.extremum = minimum;

  auto range_of = [&](Attribution who) -> std::optional<StepRange> {
    std::optional<StepRange> range;
    for (const auto & e : episodes) {
      if (e.attribution != who) {
        continue;
      }
      const auto first = series.samples[e.first].step;
      const auto last = series.samples[e.last].step;
      if (!range) {
        range = StepRange{first, last};
      } else {
        range->last = last;
      }
    }
    return range;
  };
  if (auto range = range_of(Attribution::vut_action)) {
    verdict.outcome = Outcome::fail;
    verdict.offending = range;
    verdict.attribution = Attribution::vut_action;
    if (minimum < 0.0) {
      verdict.note = "bodies interpenetrate";
    }
  } else if (auto other = range_of(Attribution::other_party)) {
    verdict.outcome = Outcome::warning;
    verdict.offending = other;
    verdict.attribution = Attribution::other_party;
    verdict.note = "incursion initiated by the other party";
  } else {
    verdict.outcome = Outcome::pass;
  }
  return verdict;
}

template <typename Pred>
std::optional<StepRange> steps_where(const std::vector<VutState> & vut, Pred pred)
{
  std::optional<StepRange> range;
  for (const auto & s : vut) {
    if (!pred(s)) {
      continue;
    }
    if (!range) {
      range = StepRange{s.step, s.step};
    } else {
      range->last = s.step;
    }
  }
  return range;
}

}  // namespace

std::string_view to_string(ContextClass context)
{
  for (const auto & [value, name] : kContextNames) {
    if (value == context) {
      return name;
    }
  }
  return "static_obstacle";
}

std::optional<ContextClass> parse_context(std::string_view text)
{
  for (const auto & [value, name] : kContextNames) {
    if (name == text) {
      return value;
    }
  }
  return std::nullopt;
}

std::string_view to_string(Outcome outcome)
{
  switch (outcome) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::warning: return "warning";
    case Outcome::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

std::string_view to_string(Attribution attribution)
{
  switch (attribution) {
    case Attribution::vut_action: return "vut_action";
    case Attribution::other_party: return "other_party";
    case Attribution::undetermined: return "undetermined";
  }
  return "undetermined";
}

void RuleSet::check() const
{
  for (const auto & [context, threshold] : lateral) {
    if (!(threshold > 0.0)) {
      throw Error(Errc::invalid_argument, "lateral threshold for " + std::string(to_string(context)) + " must be > 0");
    }
  }
  if (!(longitudinal > 0.0) || !(speed_limit > 0.0) || !(speed_tolerance >= 0.0) ||
      !(stopped_speed_epsilon > 0.0)) {
    throw Error(Errc::invalid_argument, "rule thresholds must be positive");
  }
  if (!(decel_limit < 0.0)) {
    throw Error(Errc::invalid_argument, "deceleration limit must be negative");
  }
}

double RuleSet::lateral_threshold(ContextClass context) const
{
  const auto it = lateral.find(context);
  if (it == lateral.end()) {
    throw Error(Errc::invalid_argument, "no lateral threshold for " + std::string(to_string(context)));
  }
  return it->second;
}

RuleSet parse_rule_set(std::string_view json_text, std::string_view testcase_id, std::vector<Finding> * log)
{
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::exception & e) {
    throw Error(Errc::invalid_argument, std::string("rule file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(Errc::invalid_argument, "rule file must hold a JSON object");
  }
  RuleSet rules;
  try {
    for (const auto & [key, value] : doc.items()) {
      if (key != "default" && key != "testcases") {
        throw Error(Errc::invalid_argument, "unknown top-level key '" + key + "'");
      }
    }
    if (doc.contains("default")) {
      apply_block(rules, doc.at("default"), "default", log);
    }
    if (doc.contains("testcases")) {
      const auto & cases = doc.at("testcases");
      const std::string id(testcase_id);
      if (cases.is_object() && cases.contains(id)) {
        apply_block(rules, cases.at(id), id, log);
      }
    }
  } catch (const Json::exception & e) {
    throw Error(Errc::invalid_argument, std::string("malformed rule entry: ") + e.what());
  }
  rules.check();
  return rules;
}

EntityContexts classify_contexts(const Trace & trace, const std::string & entity_id, const RuleSet & rules)
{
  EntityContexts out;
  if (const auto it = trace.obstacles.find(entity_id); it != trace.obstacles.end()) {
    out.longitudinal = ContextClass::lead_obstacle;
    for (const auto & rec : it->second) {
      out.lateral[rec.step] = ContextClass::static_obstacle;
    }
    return out;
  }
  const auto it = trace.actors.find(entity_id);
  if (it == trace.actors.end()) {
    throw Error(Errc::unknown_entity, "no actor or obstacle with id '" + entity_id + "'");
  }
  const auto & records = it->second;
  out.longitudinal = ContextClass::lead_road_user;

  std::unordered_map<std::int64_t, const VutState *> vut_at;
  for (const auto & s : trace.vut) {
    vut_at.emplace(s.step, &s);
  }
  double max_speed = 0.0;
  for (const auto & rec : records) {
    max_speed = std::max(max_speed, rec.speed);
  }
  bool warned = false;
  for (const auto & rec : records) {
    ContextClass context = ContextClass::moving_tsv;
    switch (rec.type.kind) {
      case ActorKind::vru_pedestrian: {
        const auto vut = vut_at.find(rec.step);
        if (!rec.heading || vut == vut_at.end()) {
          context = ContextClass::pedestrian_facing_away;
          if (!warned) {
            warned = true;
            out.findings.push_back(make_finding(
              Severity::warning, FindingCode::missing_heading,
              "pedestrian '" + entity_id + "' has no heading; facing-away threshold applied"));
          }
          break;
        }
        const HeadingDeg toward_vut(vut->second->heading.value() + 180.0);
        context = std::abs(heading_difference(*rec.heading, toward_vut)) < 90.0
                    ? ContextClass::pedestrian_facing_traffic
                    : ContextClass::pedestrian_facing_away;
        break;
      }
      case ActorKind::vru_cyclist: context = ContextClass::cyclist; break;
      case ActorKind::vru_pmd: context = ContextClass::pmd_rider; break;
      case ActorKind::tsv:
      case ActorKind::extension:
        context = max_speed < rules.stopped_speed_epsilon ? ContextClass::stopped_or_parked_vehicle
                                                          : ContextClass::moving_tsv;
        break;
    }
    out.lateral[rec.step] = context;
  }
  return out;
}

ContextClass classify_context(
  const Trace & trace, const std::string & entity_id, std::int64_t step, const RuleSet & rules)
{
  const auto contexts = classify_contexts(trace, entity_id, rules);
  const auto it = contexts.lateral.find(step);
  if (it == contexts.lateral.end()) {
    throw Error(Errc::unknown_entity, "'" + entity_id + "' has no record at step " + std::to_string(step));
  }
  return it->second;
}

std::vector<RuleVerdict> evaluate_clearances(
  const ClearanceSeries & series, const EntityContexts & contexts, const RuleSet & rules)
{
  if (series.samples.empty()) {
    throw Error(Errc::invalid_argument, "clearance series is empty");
  }
  auto lateral_context = [&](const ClearanceSample & s) {
    const auto it = contexts.lateral.find(s.step);
    return it != contexts.lateral.end() ? it->second : ContextClass::moving_tsv;
  };
  auto longitudinal_context = [&](const ClearanceSample &) { return contexts.longitudinal; };

  const Axis lateral{
    kLateralRule, [](const ClearanceSample & s) { return std::isfinite(s.lateral); },
    [](const ClearanceSample & s) { return s.lateral; }};
  const Axis longitudinal{
    kLongitudinalRule,
    [](const ClearanceSample & s) { return s.ahead && std::isfinite(s.longitudinal); },
    [](const ClearanceSample & s) { return s.longitudinal; }};
  return {
    evaluate_axis(series, lateral, lateral_context, rules),
    evaluate_axis(series, longitudinal, longitudinal_context, rules)};
}

std::vector<RuleVerdict> evaluate_kinematics(const Trace & trace, const RuleSet & rules)
{
  RuleVerdict speed;
  speed.rule_id = std::string(kSpeedRule);
  speed.unit = "m/s";
  speed.threshold = rules.speed_limit;
  RuleVerdict decel;
  decel.rule_id = std::string(kDecelRule);
  decel.unit = "m/s^2";
  decel.threshold = rules.decel_limit;
  if (trace.vut.empty()) {
    return {speed, decel};
  }

  double max_speed = -std::numeric_limits<double>::infinity();
  double min_acc = std::numeric_limits<double>::infinity();
  for (const auto & s : trace.vut) {
    max_speed = std::max(max_speed, s.speed);
    min_acc = std::min(min_acc, s.acc_long);
  }
  speed.extremum = max_speed;
  speed.offending = steps_where(
    trace.vut, [&](const VutState & s) { return s.speed > rules.speed_limit + rules.speed_tolerance; });
  speed.outcome = speed.offending ? Outcome::fail : Outcome::pass;
  if (speed.offending) {
    speed.attribution = Attribution::vut_action;
  }

  decel.extremum = min_acc;
  decel.offending = steps_where(trace.vut, [&](const VutState & s) { return s.acc_long <= rules.decel_limit; });
  decel.outcome = decel.offending ? Outcome::warning : Outcome::pass;
  if (decel.offending) {
    decel.note = "harsh braking; check vehicle dynamics model fidelity";
  }
  return {speed, decel};
}

std::vector<RuleVerdict> evaluate_traffic_lights(
  const Trace & trace, const RuleSet & rules, std::vector<Finding> * log)
{
  std::vector<RuleVerdict> out;
  if (trace.controllers.empty()) {
    RuleVerdict v;
    v.rule_id = std::string(kTrafficLightRule);
    v.outcome = Outcome::not_applicable;
    v.note = "no traffic light controllers in the trace";
    out.push_back(std::move(v));
    return out;
  }
  const double front = 0.5 * rules.vehicle.length - rules.vehicle.cog_forward_offset;

  for (const auto & [id, records] : trace.controllers) {
    RuleVerdict v;
    v.rule_id = std::string(kTrafficLightRule);
    v.entity_id = id;
    v.unit = "m";
    const auto line = std::find_if(
      rules.stop_lines.begin(), rules.stop_lines.end(),
      [&](const StopLine & l) { return l.controller_id == id; });
    if (line == rules.stop_lines.end()) {
      v.outcome = Outcome::not_applicable;
      v.note = "no stop line configured for this controller";
      if (log != nullptr) {
        log->push_back(make_finding(
          Severity::warning, FindingCode::missing_stop_line_config,
          "controller '" + id + "' has no configured stop line"));
      }
      out.push_back(std::move(v));
      continue;
    }

    const geo::LocalFrame frame(line->position);
    const Vec2 approach = geo::heading_vector(line->approach_heading);
    std::size_t phase_index = 0;
    std::optional<PhaseKind> phase;
    std::optional<double> previous;
    double furthest = -std::numeric_limits<double>::infinity();
    for (const auto & s : trace.vut) {
      while (phase_index < records.size() && records[phase_index].step <= s.step) {
        phase = records[phase_index].phase.kind;
        ++phase_index;
      }
      double along;
      try {
        const Vec2 front_point = frame.to_local(s.pos) + front * geo::heading_vector(s.heading);
        along = dot(front_point, approach);
      } catch (const Error &) {
        previous.reset();
        continue;
      }
      furthest = std::max(furthest, along);
      if (previous && *previous < 0.0 && along >= 0.0 && phase == PhaseKind::stop && !v.offending) {
        v.offending = StepRange{s.step, s.step};
      }
      previous = along;
    }
    v.extremum = std::isfinite(furthest) ? std::optional<double>(furthest) : std::nullopt;
    if (v.offending) {
      v.outcome = Outcome::fail;
      v.attribution = Attribution::vut_action;
      v.note = "stop line crossed during the stop phase";
    } else {
      v.outcome = Outcome::pass;
    }
    out.push_back(std::move(v));
  }
  return out;
}

RunEvaluation evaluate_run(const Trace & trace, const RuleSet & rules)
{
  RunEvaluation run;
  run.testcase_id = trace.testcase_id;
  run.run_id = trace.run_id;
  run.verdicts = evaluate_kinematics(trace, rules);

  auto evaluate_entity = [&](const std::string & id) {
    auto contexts = classify_contexts(trace, id, rules);
    double zone_lateral = 0.0;
    for (const auto & [step, context] : contexts.lateral) {
      zone_lateral = std::max(zone_lateral, rules.lateral_threshold(context));
    }
    clearance::SeriesOptions options;
    options.zone = clearance::ExclusionZone{zone_lateral, rules.longitudinal, 0.0};
    auto series = clearance::clearance_series(trace, id, rules.vehicle, options);
    run.findings.insert(run.findings.end(), contexts.findings.begin(), contexts.findings.end());
    run.findings.insert(run.findings.end(), series.findings.begin(), series.findings.end());
    if (!series.samples.empty()) {
      for (auto & v : evaluate_clearances(series, contexts, rules)) {
        run.verdicts.push_back(std::move(v));
      }
    }
    run.series.push_back(std::move(series));
  };
  for (const auto & [id, records] : trace.actors) {
    evaluate_entity(id);
  }
  for (const auto & [id, records] : trace.obstacles) {
    if (!records.empty() && is_fixed_infrastructure(records.front().type.code)) {
      continue;
    }
    evaluate_entity(id);
  }
  for (auto & v : evaluate_traffic_lights(trace, rules, &run.findings)) {
    run.verdicts.push_back(std::move(v));
  }
  run.pass = std::none_of(
    run.verdicts.begin(), run.verdicts.end(), [](const RuleVerdict & v) { return v.outcome == Outcome::fail; });
  return run;
}

TestCaseEvaluation aggregate(const std::vector<RunEvaluation> & runs, int n_required)
{
  TestCaseEvaluation out;
  out.n_required = n_required;
  std::set<int> distinct;
  bool all_pass = true;
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, Spread> spreads;
  for (const auto & run : runs) {
    if (out.testcase_id.empty()) {
      out.testcase_id = run.testcase_id;
    }
    distinct.insert(run.run_id);
    out.runs.push_back({run.run_id, run.pass});
    all_pass = all_pass && run.pass;
    for (const auto & v : run.verdicts) {
      if (v.outcome == Outcome::not_applicable || !v.extremum) {
        continue;
      }
      const auto key = std::make_pair(v.rule_id, v.entity_id);
      auto [it, inserted] = spreads.try_emplace(key);
      Spread & s = it->second;
      if (inserted) {
        order.push_back(key);
        s.rule_id = v.rule_id;
        s.entity_id = v.entity_id;
        s.unit = v.unit;
        s.min = *v.extremum;
        s.max = *v.extremum;
      }
      s.min = std::min(s.min, *v.extremum);
      s.max = std::max(s.max, *v.extremum);
      s.mean += *v.extremum;
      ++s.runs;
      s.failures += v.outcome == Outcome::fail ? 1 : 0;
    }
  }
  for (const auto & key : order) {
    Spread s = spreads.at(key);
    s.mean /= static_cast<double>(s.runs);
    out.spreads.push_back(std::move(s));
  }
  out.distinct_runs = static_cast<int>(distinct.size());
  out.pass = !runs.empty() && out.distinct_runs >= n_required && all_pass;
  return out;
}

}  // namespace vista::rules
