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

#include "vista/report.hpp"

#include "vista/csv.hpp"
#include "vista/text.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>
#include <variant>

namespace vista::report
{

namespace
{

using Json = nlohmann::ordered_json;

Json number(double value)
{
  return std::isfinite(value) ? Json(value) : Json(nullptr);
}

Json number(const std::optional<double> & value)
{
  return value ? number(*value) : Json(nullptr);
}

std::string dump(const Json & doc)
{
  return doc.dump(2) + "\n";
}

std::string fmt(double value)
{
  return text::format_number(value);
}

std::string fmt(const std::optional<double> & value)
{
  return value ? fmt(*value) : std::string("-");
}

Json finding_json(const Finding & f)
{
  Json j;
  j["severity"] = to_string(f.severity);
  j["code"] = to_string(f.code);
  j["message"] = f.message;
  if (!f.location.file.empty()) {
    j["file"] = f.location.file;
  }
  if (f.location.row > 0) {
    j["row"] = f.location.row;
  }
  if (!f.location.column.empty()) {
    j["column"] = f.location.column;
  }
  return j;
}

std::string finding_line(const Finding & f)
{
  std::string line = "  [" + std::string(to_string(f.severity)) + "] " + std::string(to_string(f.code));
  if (!f.location.file.empty()) {
    line += " " + f.location.file;
    if (f.location.row > 0) {
      line += ":" + std::to_string(f.location.row);
    }
  }
  if (!f.location.column.empty()) {
    line += " (" + f.location.column + ")";
  }
  return line + ": " + f.message + "\n";
}

Json verdict_json(const rules::RuleVerdict & v)
{
  Json j;
  j["rule"] = v.rule_id;
  j["entity"] = v.entity_id.empty() ? Json(nullptr) : Json(v.entity_id);
  j["context"] = v.context ? Json(std::string(rules::to_string(*v.context))) : Json(nullptr);
  j["outcome"] = rules::to_string(v.outcome);
  j["extremum"] = number(v.extremum);
  j["unit"] = v.unit;
  j["threshold"] = number(v.threshold);
  if (v.offending) {
    j["steps"] = Json{{"first", v.offending->first}, {"last", v.offending->last}};
  } else {
    j["steps"] = nullptr;
  }
  j["attribution"] = rules::to_string(v.attribution);
  j["note"] = v.note;
  return j;
}

std::string verdict_line(const rules::RuleVerdict & v)
{
  std::ostringstream os;
  os << "  " << v.rule_id;
  if (!v.entity_id.empty()) {
    os << " [" << v.entity_id;
    if (v.context) {
      os << ", " << rules::to_string(*v.context);
    }
    os << "]";
  }
  os << ": " << rules::to_string(v.outcome) << "  extremum " << fmt(v.extremum) << ' ' << v.unit
     << "  threshold " << fmt(v.threshold);
  if (v.offending) {
    os << "  steps " << v.offending->first << ".." << v.offending->last;
  }
  if (v.outcome == rules::Outcome::fail || v.outcome == rules::Outcome::warning) {
    os << "  attribution " << rules::to_string(v.attribution);
  }
  if (!v.note.empty()) {
    os << "  (" << v.note << ")";
  }
  os << "\n";
  return os.str();
}

std::string pass_word(bool pass)
{
  return pass ? "PASS" : "FAIL";
}

}  // namespace

std::string integrity_json(std::string_view source, const IntegrityReport & report)
{
  Json doc;
  doc["source"] = source;
  doc["valid"] = !report.has_errors();
  doc["errors"] = report.error_count();
  doc["warnings"] = report.warning_count();
  Json list = Json::array();
  for (const auto & f : report.findings()) {
    list.push_back(finding_json(f));
  }
  doc["findings"] = std::move(list);
  return dump(doc);
}

std::string integrity_text(std::string_view source, const IntegrityReport & report)
{
  std::string out = std::string(source) + ": " + (report.has_errors() ? "INVALID" : "VALID") + " (" +
                    std::to_string(report.error_count()) + " errors, " +
                    std::to_string(report.warning_count()) + " warnings)\n";
  for (const auto & f : report.findings()) {
    out += finding_line(f);
  }
  return out;
}

std::string evaluation_json(const rules::RunEvaluation & run)
{
  Json doc;
  doc["testcase_id"] = run.testcase_id;
  doc["run_id"] = run.run_id;
  doc["pass"] = run.pass;
  Json verdicts = Json::array();
  for (const auto & v : run.verdicts) {
    verdicts.push_back(verdict_json(v));
  }
  doc["verdicts"] = std::move(verdicts);
  Json findings = Json::array();
  for (const auto & f : run.findings) {
    findings.push_back(finding_json(f));
  }
  doc["findings"] = std::move(findings);
  return dump(doc);
}

std::string evaluation_text(const rules::RunEvaluation & run)
{
  std::string out = run.testcase_id + " run " + std::to_string(run.run_id) + ": " + pass_word(run.pass) + "\n";
  for (const auto & v : run.verdicts) {
    out += verdict_line(v);
  }
  for (const auto & f : run.findings) {
    out += finding_line(f);
  }
  return out;
}

std::string summary_json(const rules::TestCaseEvaluation & summary)
{
  Json doc;
  doc["testcase_id"] = summary.testcase_id;
  doc["pass"] = summary.pass;
  doc["n_required"] = summary.n_required;
  doc["distinct_runs"] = summary.distinct_runs;
  Json runs = Json::array();
  for (const auto & r : summary.runs) {
    runs.push_back(Json{{"run_id", r.run_id}, {"pass", r.pass}});
  }
  doc["runs"] = std::move(runs);
  Json spreads = Json::array();
  for (const auto & s : summary.spreads) {
    Json j;
    j["rule"] = s.rule_id;
    j["entity"] = s.entity_id.empty() ? Json(nullptr) : Json(s.entity_id);
    j["unit"] = s.unit;
    j["min"] = number(s.min);
    j["max"] = number(s.max);
    j["mean"] = number(s.mean);
    j["runs"] = s.runs;
    j["failures"] = s.failures;
    spreads.push_back(std::move(j));
  }
  doc["spreads"] = std::move(spreads);
  return dump(doc);
}

std::string summary_text(const rules::TestCaseEvaluation & summary)
{
  std::ostringstream os;
  os << summary.testcase_id << ": " << pass_word(summary.pass) << " (" << summary.distinct_runs
     << " runs, " << summary.n_required << " required)\n";
  for (const auto & s : summary.spreads) {
    os << "  " << s.rule_id;
    if (!s.entity_id.empty()) {
      os << " [" << s.entity_id << "]";
    }
    os << ": min " << fmt(s.min) << "  max " << fmt(s.max) << "  mean " << fmt(s.mean) << ' ' << s.unit
       << "  failures " << s.failures << "/" << s.runs << "\n";
  }
  for (const auto & r : summary.runs) {
    os << "  run " << r.run_id << ": " << pass_word(r.pass) << "\n";
  }
  return os.str();
}

std::string fidelity_json(
  const fidelity::FidelityReport & result, const fidelity::Tolerances & tolerances)
{
  Json doc;
  doc["pass"] = result.pass;
  doc["recalibration_needed"] = result.recalibration_needed;
  doc["offset_s"] = result.offset;
  doc["resample_rate_hz"] = result.resample_rate;
  doc["samples"] = result.samples;
  doc["position_rmse_m"] = result.position_rmse;
  doc["speed_rmse_mps"] = result.speed_rmse;
  doc["heading_rmse_deg"] = result.heading_rmse;
  doc["max_position_deviation_m"] = result.max_position_deviation;
  doc["position_pass"] = result.position_pass;
  doc["speed_pass"] = result.speed_pass;
  doc["heading_pass"] = result.heading_pass;
  doc["tolerances"] = Json{
    {"position_rmse", tolerances.position_rmse},
    {"speed_rmse", tolerances.speed_rmse},
    {"heading_rmse", tolerances.heading_rmse}};
  return dump(doc);
}

std::string fidelity_text(
  const fidelity::FidelityReport & result, const fidelity::Tolerances & tolerances)
{
  std::ostringstream os;
  os << "fidelity: " << pass_word(result.pass) << "\n"
     << "  offset " << fmt(result.offset) << " s, " << result.samples << " samples at "
     << fmt(result.resample_rate) << " Hz\n"
     << "  position rmse " << fmt(result.position_rmse) << " m (tolerance "
     << fmt(tolerances.position_rmse) << "): " << pass_word(result.position_pass) << "\n"
     << "  speed rmse " << fmt(result.speed_rmse) << " m/s (tolerance " << fmt(tolerances.speed_rmse)
     << "): " << pass_word(result.speed_pass) << "\n"
     << "  heading rmse " << fmt(result.heading_rmse) << " deg (tolerance "
     << fmt(tolerances.heading_rmse) << "): " << pass_word(result.heading_pass) << "\n"
     << "  max position deviation " << fmt(result.max_position_deviation) << " m\n";
  if (result.recalibration_needed) {
    os << "  recalibration needed\n";
  }
  return os.str();
}

std::string clearance_csv(const rules::RunEvaluation & run)
{
  std::string out = "step,time,entity_id,lateral,longitudinal,euclidean_min,ntd\n";
  for (const auto & series : run.series) {
    for (const auto & s : series.samples) {
      out += csv::format_record(
        {std::to_string(s.step), fmt(s.time), s.entity_id, fmt(s.lateral), fmt(s.longitudinal),
         fmt(s.euclidean_min), fmt(s.ntd)});
    }
  }
  return out;
}

std::string kinematics_csv(const Trace & trace)
{
  std::string out = "step,time,speed,acc_long,acc_lat,yaw_rate,heading\n";
  for (const auto & v : trace.vut) {
    out += csv::format_record(
      {std::to_string(v.step), fmt(v.time), fmt(v.speed), fmt(v.acc_long), fmt(v.acc_lat),
       fmt(v.yaw_rate), fmt(v.heading.value())});
  }
  return out;
}

std::string trajectory_csv(const Trace & trace)
{
  std::string out = "step,time,entity_id,lat,lon,x,y\n";
  auto row = [&](std::int64_t step, double time, const std::string & id, const EntityPosition & pos) {
    std::vector<std::string> cells{std::to_string(step), fmt(time), id, "", "", "", ""};
    if (const auto * geo = std::get_if<GeoPosition>(&pos)) {
      cells[3] = fmt(geo->lat);
      cells[4] = fmt(geo->lon);
    } else {
      const auto & vcs = std::get<VcsPosition>(pos);
      cells[5] = fmt(vcs.x);
      cells[6] = fmt(vcs.y);
    }
    out += csv::format_record(cells);
  };
  for (const auto & v : trace.vut) {
    row(v.step, v.time, "VUT", v.pos);
  }
  for (const auto & [id, records] : trace.actors) {
    for (const auto & a : records) {
      row(a.step, a.time, id, a.pos);
    }
  }
  for (const auto & [id, records] : trace.obstacles) {
    for (const auto & o : records) {
      row(o.step, o.time, id, o.pos);
    }
  }
  return out;
}

}  // namespace vista::report
