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

#include "vista/integrity.hpp"

#include "vista/error.hpp"
#include "vista/geo.hpp"
#include "vista/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace vista
{

namespace
{

class Collector
{
public:
  explicit Collector(std::vector<Finding> & out) : out_(out) {}

  void error(FindingCode code, std::string message, Location where = {})
  {
    out_.push_back(make_finding(Severity::error, code, std::move(message), std::move(where)));
  }
  void warning(FindingCode code, std::string message, Location where = {})
  {
    out_.push_back(make_finding(Severity::warning, code, std::move(message), std::move(where)));
  }

private:
  std::vector<Finding> & out_;
};

Location locate(const SourceMap::Rows * rows, std::size_t index, std::string column = {})
{
  Location where;
  where.column = std::move(column);
  if (rows != nullptr) {
    where.file = rows->file;
    if (index < rows->rows.size()) {
      where.row = rows->rows[index];
    }
  }
  return where;
}

template <typename Map>
const SourceMap::Rows * rows_of(const Map * map, const std::string & id)
{
  if (map == nullptr) {
    return nullptr;
  }
  const auto it = map->find(id);
  return it == map->end() ? nullptr : &it->second;
}

std::optional<std::string> shape_defect(const BoundingShape & shape)
{
  Polygon planar;
  try {
    std::visit(
      [&](const auto & vertices) {
        using T = std::decay_t<decltype(vertices)>;
        if (vertices.empty()) {
          return;
        }
        if constexpr (std::is_same_v<T, std::vector<GeoPosition>>) {
          for (const auto & v : vertices) {
            if (!is_valid(v)) {
              throw Error(Errc::invalid_argument, "vertex outside the WGS84 range");
            }
          }
          const geo::LocalFrame frame(vertices.front());
          for (const auto & v : vertices) {
            planar.push_back(frame.to_local(v));
          }
        } else {
          for (const auto & v : vertices) {
            planar.push_back({v.x, v.y});
          }
        }
      },
      shape.vertices);
  } catch (const Error & e) {
    return std::string(e.what());
  }
  return polygon::degeneracy(planar);
}

bool finite_all(std::initializer_list<double> values)
{
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

bool position_valid(const EntityPosition & pos)
{
  return std::visit([](const auto & p) { return is_valid(p); }, pos);
}

// Entity records: ids consistent, steps strictly increasing and present in
// the VUT step set.
template <typename Record>
void check_entity_clock(
  Collector & out, const std::string & kind, const std::string & id,
  const std::vector<Record> & records, const std::unordered_set<std::int64_t> & vut_steps,
  const SourceMap::Rows * rows)
{
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto & rec = records[i];
    if (rec.id != id) {
      out.error(
        FindingCode::malformed_value,
        kind + " record id '" + rec.id + "' filed under '" + id + "'", locate(rows, i));
    }
    if (!vut_steps.count(rec.step)) {
      out.error(
        FindingCode::orphan_step,
        kind + " '" + id + "' step " + std::to_string(rec.step) + " has no VUT record",
        locate(rows, i, "Step_number"));
    }
    if (!std::isfinite(rec.time) || rec.time < 0.0) {
      out.error(
        FindingCode::out_of_range, kind + " '" + id + "' time is negative or non-finite",
        locate(rows, i, "Time"));
    }
    if (i > 0) {
      const auto prev = records[i - 1].step;
      if (rec.step == prev) {
        out.error(
          FindingCode::duplicate_step,
          kind + " '" + id + "' has two records at step " + std::to_string(rec.step),
          locate(rows, i, "Step_number"));
      } else if (rec.step < prev) {
        out.error(
          FindingCode::non_monotone_step,
          kind + " '" + id + "' step decreases to " + std::to_string(rec.step),
          locate(rows, i, "Step_number"));
      }
      if (rec.time < records[i - 1].time) {
        out.error(
          FindingCode::non_monotone_time, kind + " '" + id + "' time decreases",
          locate(rows, i, "Time"));
      }
    }
  }
}

void check_shape(
  Collector & out, const std::string & what, const BoundingShape & shape, Location where)
{
  if (auto defect = shape_defect(shape)) {
    out.error(FindingCode::degenerate_shape, what + ": " + *defect, std::move(where));
  }
}

}  // namespace

std::vector<Finding> validate_trace(const Trace & trace, const SourceMap * source)
{
  std::vector<Finding> findings;
  Collector out(findings);
  const SourceMap::Rows * vut_rows = source ? &source->vut : nullptr;

  if (trace.run_id < 1) {
    out.error(FindingCode::out_of_range, "run id must be a positive integer");
  }
  if (trace.vut.empty()) {
    out.error(FindingCode::missing_value, "trace holds no VUT records", locate(vut_rows, 0));
    return findings;
  }

  std::unordered_set<std::int64_t> vut_steps;
  for (std::size_t i = 0; i < trace.vut.size(); ++i) {
    const auto & s = trace.vut[i];
    vut_steps.insert(s.step);
    if (!std::isfinite(s.time) || s.time < 0.0) {
      out.error(
        FindingCode::out_of_range, "VUT time is negative or non-finite", locate(vut_rows, i, "Time"));
    }
    if (s.step < 0) {
      out.error(FindingCode::out_of_range, "step is negative", locate(vut_rows, i, "Step_number"));
    }
    if (!is_valid(s.pos)) {
      out.error(FindingCode::out_of_range, "VUT position outside WGS84 range", locate(vut_rows, i));
    }
    if (!finite_all(
          {s.travelled, s.speed, s.acc_lat, s.acc_long, s.yaw_rate, s.heading.value(), s.throttle,
           s.brake, s.steering_angle}) ||
        !std::isfinite(s.pitch_rate.value_or(0.0)) || !std::isfinite(s.roll_rate.value_or(0.0))) {
      out.error(FindingCode::out_of_range, "VUT kinematics non-finite", locate(vut_rows, i));
    }
    if (s.speed < 0.0) {
      out.error(FindingCode::out_of_range, "VUT speed is negative", locate(vut_rows, i, "VUT_speed"));
    }
    if (s.travelled < 0.0) {
      out.error(
        FindingCode::out_of_range, "travelled distance is negative",
        locate(vut_rows, i, "VUT_travelled_dist"));
    }
    if (!(s.throttle >= 0.0 && s.throttle <= 1.0)) {
      out.error(
        FindingCode::out_of_range, "throttle outside [0, 1]", locate(vut_rows, i, "VUT_throttle"));
    }
    if (!(s.brake >= 0.0 && s.brake <= 1.0)) {
      out.error(FindingCode::out_of_range, "brake outside [0, 1]", locate(vut_rows, i, "VUT_brake"));
    }
    if (i > 0) {
      const auto & prev = trace.vut[i - 1];
      if (!(s.time > prev.time)) {
        out.error(
          FindingCode::non_monotone_time,
          "VUT time " + std::to_string(s.time) + " does not exceed the previous " +
            std::to_string(prev.time),
          locate(vut_rows, i, "Time"));
      }
      if (s.step == prev.step) {
        out.error(
          FindingCode::duplicate_step, "step " + std::to_string(s.step) + " repeated",
          locate(vut_rows, i, "Step_number"));
      } else if (s.step < prev.step) {
        out.error(
          FindingCode::non_monotone_step, "step decreases to " + std::to_string(s.step),
          locate(vut_rows, i, "Step_number"));
      }
    }
  }

  const double period = median_period(trace.vut);
  const double t0 = trace.vut.front().time;
  const bool late_start = period > 0.0 ? t0 > period * (1.0 + 1e-9) : t0 != 0.0;
  if (std::isfinite(t0) && t0 >= 0.0 && late_start) {
    out.error(
      FindingCode::non_zero_start_time,
      "first record at t = " + std::to_string(t0) + " s, more than one sample period after 0",
      locate(vut_rows, 0, "Time"));
  }

  for (const auto & [id, records] : trace.actors) {
    const auto * rows = rows_of(source ? &source->actors : nullptr, id);
    check_entity_clock(out, "actor", id, records, vut_steps, rows);
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto & a = records[i];
      if (!position_valid(a.pos)) {
        out.error(FindingCode::out_of_range, "actor '" + id + "' position invalid", locate(rows, i));
      }
      if (!(a.speed >= 0.0) || !std::isfinite(a.speed)) {
        out.error(
          FindingCode::out_of_range, "actor '" + id + "' speed is negative",
          locate(rows, i, "Actor_vel_abs"));
      }
      if (!finite_all({a.vel_lat, a.vel_long, a.acc_lat, a.acc_long})) {
        out.error(
          FindingCode::out_of_range, "actor '" + id + "' kinematics non-finite", locate(rows, i));
      }
      if (std::isnan(a.ttc) || a.ttc < 0.0) {
        out.error(
          FindingCode::out_of_range, "actor '" + id + "' TTC is negative",
          locate(rows, i, "Actor_TTC"));
      }
      if (a.bbox_true) {
        check_shape(out, "actor '" + id + "' true box", *a.bbox_true, locate(rows, i, "Actor_bbox_true"));
      }
      if (a.bbox_perceived) {
        check_shape(
          out, "actor '" + id + "' perceived box", *a.bbox_perceived,
          locate(rows, i, "Actor_bbox_perceived"));
      }
    }
  }

  for (const auto & [id, records] : trace.obstacles) {
    const auto * rows = rows_of(source ? &source->obstacles : nullptr, id);
    check_entity_clock(out, "obstacle", id, records, vut_steps, rows);
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto & o = records[i];
      if (!position_valid(o.pos)) {
        out.error(
          FindingCode::out_of_range, "obstacle '" + id + "' position invalid", locate(rows, i));
      }
      if (std::isnan(o.ntd) || o.ntd < 0.0) {
        out.error(
          FindingCode::out_of_range, "obstacle '" + id + "' NTD is negative",
          locate(rows, i, "Obst_NTD"));
      }
      check_shape(
        out, "obstacle '" + id + "' true polygon", o.poly_true, locate(rows, i, "Obst_poly_true"));
      if (o.poly_perceived) {
        check_shape(
          out, "obstacle '" + id + "' perceived polygon", *o.poly_perceived,
          locate(rows, i, "Obst_poly_perceived"));
      }
    }
  }

  for (const auto & [id, records] : trace.controllers) {
    const auto * rows = rows_of(source ? &source->controllers : nullptr, id);
    check_entity_clock(out, "controller", id, records, vut_steps, rows);
  }
  return findings;
}

std::vector<Finding> check_frequency(const Trace & trace, double f_min)
{
  std::vector<Finding> findings;
  Collector out(findings);
  if (trace.vut.size() < 2) {
    return findings;
  }
  const double period = median_period(trace.vut);
  if (!(period > 0.0)) {
    return findings;
  }
  const double rate = 1.0 / period;
  if (rate < f_min * (1.0 - 1e-9)) {
    out.error(
      FindingCode::frequency_too_low,
      "median logging rate " + std::to_string(rate) + " Hz is below the required " +
        std::to_string(f_min) + " Hz");
  }
  for (std::size_t i = 1; i < trace.vut.size(); ++i) {
    const double dt = trace.vut[i].time - trace.vut[i - 1].time;
    if (std::abs(dt - period) > kJitterTolerance * period) {
      Location where;
      where.column = "Time";
      where.row = static_cast<std::int64_t>(i);
      out.warning(
        FindingCode::jitter_exceeded,
        "sample spacing " + std::to_string(dt) + " s deviates from the median period " +
          std::to_string(period) + " s by more than 10 %",
        where);
      break;
    }
  }
  return findings;
}

std::vector<Finding> check_run_set(std::span<const RunIdentity> runs, int n_required)
{
  std::vector<Finding> findings;
  Collector out(findings);
  std::set<int> seen;
  std::set<std::string> testcases;
  for (const auto & run : runs) {
    testcases.insert(run.testcase_id);
    if (!seen.insert(run.run_id).second) {
      out.warning(
        FindingCode::duplicate_run,
        "run " + std::to_string(run.run_id) + " of '" + run.testcase_id + "' appears more than once");
    }
  }
  if (testcases.size() > 1) {
    out.error(FindingCode::mixed_testcases, "run set mixes " + std::to_string(testcases.size()) + " test cases");
  }
  if (static_cast<int>(seen.size()) < n_required) {
    out.error(
      FindingCode::insufficient_runs,
      std::to_string(seen.size()) + " distinct runs, " + std::to_string(n_required) + " required");
  }
  return findings;
}

std::vector<Finding> check_run_set(std::span<const Trace> runs, int n_required)
{
  std::vector<RunIdentity> ids;
  ids.reserve(runs.size());
  for (const auto & t : runs) {
    ids.push_back({t.testcase_id, t.run_id});
  }
  return check_run_set(std::span<const RunIdentity>(ids), n_required);
}

}  // namespace vista
