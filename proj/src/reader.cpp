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

#include "vista/reader.hpp"

#include "vista/csv.hpp"
#include "vista/error.hpp"
#include "vista/integrity.hpp"
#include "vista/schema.hpp"
#include "vista/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vista
{

namespace
{

namespace fs = std::filesystem;
using schema::Group;

using Columns = std::map<std::string, std::size_t, std::less<>>;

enum class Role {
  flat,
  vut,
  actors,
  actors_perceived,
  obstacles,
  obstacles_perceived,
  lights,
  lights_perceived,
};

bool is_perceived_role(Role role)
{
  return role == Role::actors_perceived || role == Role::obstacles_perceived ||
         role == Role::lights_perceived;
}

std::optional<Group> entity_group_of(Role role)
{
  switch (role) {
    case Role::actors:
    case Role::actors_perceived: return Group::actor;
    case Role::obstacles:
    case Role::obstacles_perceived: return Group::obstacle;
    case Role::lights:
    case Role::lights_perceived: return Group::controller;
    case Role::flat:
    case Role::vut: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view id_column(Group group)
{
  switch (group) {
    case Group::actor: return schema::kActorId;
    case Group::obstacle: return schema::kObstacleId;
    case Group::controller: return schema::kControllerId;
    case Group::common:
    case Group::vut: break;
  }
  return {};
}

std::string_view position_prefix(Group group)
{
  return group == Group::actor ? "Actor_pos_true_" : "Obst_pos_true_";
}

struct GroupColumns
{
  Group kind{Group::actor};
  Columns columns;
};

struct Header
{
  Columns common;
  Columns vut;
  std::vector<GroupColumns> groups;
  std::size_t width{0};
};

struct Context
{
  std::string file;
  const ParseOptions & options;
  IntegrityReport & report;

  void error(FindingCode code, std::string message, std::int64_t row = 0, std::string column = {})
  {
    report.add(Severity::error, code, std::move(message), Location{file, row, std::move(column)});
  }
  void warning(FindingCode code, std::string message, std::int64_t row = 0, std::string column = {})
  {
    report.add(Severity::warning, code, std::move(message), Location{file, row, std::move(column)});
  }
};

// Header analysis: common and VUT columns are keyed by name, entity columns
// belong to the group opened by the most recent id column of their kind.
std::optional<Header> read_header(const csv::Record & record, Role role, Context & ctx)
{
  Header header;
  header.width = record.cells.size();
  std::set<std::string, std::less<>> seen_vut;
  bool any_known = false;
  const auto entity_group = entity_group_of(role);

  for (std::size_t i = 0; i < record.cells.size(); ++i) {
    const std::string name(text::trim(record.cells[i]));
    const schema::ColumnSpec * spec = schema::find(name);
    if (spec == nullptr) {
      ctx.warning(FindingCode::unknown_column, "column '" + name + "' is not part of the format", record.line, name);
      continue;
    }
    any_known = true;
    if (spec->group == Group::common) {
      if (!header.common.emplace(name, i).second) {
        ctx.error(FindingCode::duplicate_column, "column '" + name + "' repeated", record.line, name);
      }
      continue;
    }
    if (spec->group == Group::vut) {
      if (role != Role::flat && role != Role::vut) {
        ctx.warning(
          FindingCode::unknown_column, "VUT column '" + name + "' ignored in an entity file",
          record.line, name);
        continue;
      }
      if (!header.vut.emplace(name, i).second) {
        ctx.error(FindingCode::duplicate_column, "column '" + name + "' repeated", record.line, name);
      }
      continue;
    }
    const bool allowed =
      role == Role::flat || (entity_group && *entity_group == spec->group);
    if (!allowed) {
      ctx.warning(
        FindingCode::unknown_column, "column '" + name + "' does not belong in this file",
        record.line, name);
      continue;
    }
    if (is_perceived_role(role) && !spec->perceived && name != id_column(spec->group)) {
      ctx.warning(
        FindingCode::unknown_column, "column '" + name + "' ignored in a perceived-state file",
        record.line, name);
      continue;
    }
    if (name == id_column(spec->group)) {
      header.groups.push_back(GroupColumns{spec->group, {}});
      header.groups.back().columns.emplace(name, i);
      continue;
    }
    GroupColumns * open = nullptr;
    for (auto it = header.groups.rbegin(); it != header.groups.rend(); ++it) {
      if (it->kind == spec->group) {
        open = &*it;
        break;
      }
    }
    if (open == nullptr) {
      ctx.warning(
        FindingCode::unknown_column,
        "column '" + name + "' precedes its '" + std::string(id_column(spec->group)) + "' column",
        record.line, name);
      continue;
    }
    if (!open->columns.emplace(name, i).second) {
      ctx.error(
        FindingCode::duplicate_column, "column '" + name + "' repeated within one group",
        record.line, name);
    }
  }

  if (!any_known) {
    ctx.error(FindingCode::missing_header, "first row is not a header row", record.line);
    return std::nullopt;
  }

  auto require = [&](const Columns & cols, std::string_view name, const std::string & where) {
    if (!cols.count(name)) {
      ctx.error(
        FindingCode::missing_mandatory_column, "mandatory column '" + std::string(name) + "' missing" + where,
        record.line, std::string(name));
    }
  };
  require(header.common, schema::kTime, "");
  require(header.common, schema::kStep, "");

  if (role == Role::flat || role == Role::vut) {
    for (const auto & spec : schema::columns()) {
      if (spec.group == Group::vut && spec.presence == schema::Presence::mandatory) {
        require(header.vut, spec.name, "");
      }
    }
  }
  if (entity_group && header.groups.empty()) {
    require(header.common, id_column(*entity_group), "");
  }
  for (std::size_t g = 0; g < header.groups.size(); ++g) {
    const auto & group = header.groups[g];
    const std::string where = " in group " + std::to_string(g + 1);
    if (is_perceived_role(role)) {
      continue;
    }
    for (const auto & spec : schema::columns()) {
      if (spec.group == group.kind && spec.presence == schema::Presence::mandatory) {
        require(group.columns, spec.name, where);
      }
    }
    if (group.kind != Group::controller) {
      const std::string prefix(position_prefix(group.kind));
      const bool geo = group.columns.count(prefix + "lat") && group.columns.count(prefix + "lon");
      const bool vcs = group.columns.count(prefix + "x") && group.columns.count(prefix + "y");
      if (!geo && !vcs) {
        ctx.error(
          FindingCode::missing_mandatory_column,
          "position needs the " + prefix + "lat/lon or " + prefix + "x/y pair" + where,
          record.line, prefix + "lat");
      }
    }
  }
  return header;
}

class Row
{
public:
  Row(const csv::Record & record, Context & ctx) : record_(record), ctx_(ctx) {}

  std::int64_t line() const { return record_.line; }
  bool ok() const { return ok_; }

  std::string_view text(const Columns & cols, std::string_view name) const
  {
    const auto it = cols.find(name);
    if (it == cols.end() || it->second >= record_.cells.size()) {
      return {};
    }
    return text::trim(record_.cells[it->second]);
  }

  bool filled(const Columns & cols, std::string_view name) const { return !text(cols, name).empty(); }

  std::string_view required_text(const Columns & cols, std::string_view name)
  {
    const auto value = text(cols, name);
    if (value.empty()) {
      missing(cols, name);
    }
    return value;
  }

  std::optional<double> number(const Columns & cols, std::string_view name, bool required, bool allow_inf = false)
  {
    const auto token = text(cols, name);
    if (token.empty()) {
      if (required) {
        missing(cols, name);
      }
      return std::nullopt;
    }
    auto value = text::parse_number(token, allow_inf);
    if (!value) {
      fail(FindingCode::malformed_value, "'" + std::string(token) + "' is not a number", name);
    }
    return value;
  }

  double required_number(const Columns & cols, std::string_view name, bool allow_inf = false)
  {
    return number(cols, name, true, allow_inf).value_or(0.0);
  }

  std::optional<std::int64_t> integer(const Columns & cols, std::string_view name)
  {
    const auto token = text(cols, name);
    if (token.empty()) {
      missing(cols, name);
      return std::nullopt;
    }
    auto value = text::parse_integer(token);
    if (!value) {
      fail(FindingCode::malformed_value, "'" + std::string(token) + "' is not an integer", name);
    }
    return value;
  }

  bool flag(const Columns & cols, std::string_view name)
  {
    const auto token = text(cols, name);
    if (token == "1" || token == "true") {
      return true;
    }
    if (token == "0" || token == "false") {
      return false;
    }
    if (token.empty()) {
      missing(cols, name);
    } else {
      fail(FindingCode::malformed_value, "'" + std::string(token) + "' is not a 0/1 flag", name);
    }
    return false;
  }

  std::optional<BoundingShape> shape(
    const Columns & cols, std::string_view name, Frame frame, bool required)
  {
    const auto token = text(cols, name);
    if (token.empty()) {
      if (required) {
        missing(cols, name);
      }
      return std::nullopt;
    }
    try {
      return parse_shape(token, frame, ctx_.options.axis_order);
    } catch (const Error & e) {
      fail(
        FindingCode::malformed_value, std::string(to_string(e.code())) + ": " + e.what(), name);
      return std::nullopt;
    }
  }

  std::optional<EntityPosition> position(const Columns & cols, std::string_view prefix)
  {
    const std::string p(prefix);
    const bool geo = filled(cols, p + "lat") || filled(cols, p + "lon");
    const bool vcs = filled(cols, p + "x") || filled(cols, p + "y");
    if (geo && vcs) {
      fail(FindingCode::malformed_value, "both WGS84 and VCS positions given", p + "lat");
      return std::nullopt;
    }
    if (!geo && !vcs) {
      fail(FindingCode::missing_value, "no position given", p + "lat");
      return std::nullopt;
    }
    const auto z = number(cols, p + "z", false);
    if (geo) {
      const double lat = required_number(cols, p + "lat");
      const double lon = required_number(cols, p + "lon");
      return EntityPosition{GeoPosition{lat, lon, z}};
    }
    const double x = required_number(cols, p + "x");
    const double y = required_number(cols, p + "y");
    return EntityPosition{VcsPosition{x, y, z}};
  }

  void fail(FindingCode code, std::string message, std::string_view column)
  {
    ok_ = false;
    ctx_.error(code, std::move(message), record_.line, std::string(column));
  }

private:
  void missing(const Columns & cols, std::string_view name)
  {
    // An absent mandatory column was already reported against the header.
    ok_ = false;
    if (cols.count(name)) {
      ctx_.error(
        FindingCode::missing_value, "empty cell in column '" + std::string(name) + "'",
        record_.line, std::string(name));
    }
  }

  const csv::Record & record_;
  Context & ctx_;
  bool ok_{true};
};

std::optional<VutState> read_vut(Row & row, const Header & h)
{
  VutState s;
  s.time = row.required_number(h.common, schema::kTime);
  s.step = row.integer(h.common, schema::kStep).value_or(0);
  const auto & c = h.vut;
  s.pos.lat = row.required_number(c, "VUT_pos_lat");
  s.pos.lon = row.required_number(c, "VUT_pos_lon");
  s.pos.elev = row.number(c, "VUT_pos_z", false);
  s.travelled = row.required_number(c, "VUT_travelled_dist");
  s.speed = row.required_number(c, "VUT_speed");
  s.acc_lat = row.required_number(c, "VUT_acc_lat");
  s.acc_long = row.required_number(c, "VUT_acc_long");
  s.yaw_rate = row.required_number(c, "VUT_yaw_rate");
  s.pitch_rate = row.number(c, "VUT_pitch_rate", false);
  s.roll_rate = row.number(c, "VUT_roll_rate", false);
  s.heading = HeadingDeg(row.required_number(c, "VUT_heading"));
  s.indicators.left_front = row.flag(c, "VUT_ind_left_front");
  s.indicators.left_rear = row.flag(c, "VUT_ind_left_rear");
  s.indicators.right_front = row.flag(c, "VUT_ind_right_front");
  s.indicators.right_rear = row.flag(c, "VUT_ind_right_rear");
  s.indicators.brake = row.flag(c, "VUT_ind_brake");
  s.indicators.reverse = row.flag(c, "VUT_ind_reverse");
  s.indicators.hazard = row.flag(c, "VUT_ind_hazard");
  s.throttle = row.required_number(c, "VUT_throttle");
  s.brake = row.required_number(c, "VUT_brake");
  s.steering_angle = row.required_number(c, "VUT_steering_angle");
  s.drive_status = parse_drive_status(row.required_text(c, "VUT_drive_status"));
  s.special_op = parse_special_op(row.required_text(c, "VUT_special_op"));
  if (!row.ok()) {
    return std::nullopt;
  }
  return s;
}

std::optional<ActorState> read_actor(Row & row, const Columns & c)
{
  ActorState a;
  a.id = std::string(row.required_text(c, schema::kActorId));
  a.type = parse_actor_type(row.required_text(c, "Actor_type"));
  const auto pos = row.position(c, position_prefix(Group::actor));
  if (pos) {
    a.pos = *pos;
    a.bbox_true = row.shape(c, "Actor_bbox_true", frame_of(*pos), false);
    a.bbox_perceived = row.shape(c, "Actor_bbox_perceived", frame_of(*pos), false);
  }
  a.speed = row.required_number(c, "Actor_vel_abs");
  a.vel_lat = row.required_number(c, "Actor_vel_lat");
  a.vel_long = row.required_number(c, "Actor_vel_long");
  a.acc_lat = row.required_number(c, "Actor_acc_lat");
  a.acc_long = row.required_number(c, "Actor_acc_long");
  if (const auto h = row.number(c, "Actor_heading", false)) {
    a.heading = HeadingDeg(*h);
  }
  a.ttc = row.required_number(c, "Actor_TTC", true);
  if (!row.ok()) {
    return std::nullopt;
  }
  return a;
}

std::optional<ObstacleState> read_obstacle(Row & row, const Columns & c)
{
  ObstacleState o;
  o.id = std::string(row.required_text(c, schema::kObstacleId));
  const auto type_text = row.required_text(c, "Obst_type");
  if (!type_text.empty()) {
    if (const auto code = obstacle_code_from_name(type_text)) {
      o.type = ObstacleType{*code};
    } else {
      row.fail(
        FindingCode::malformed_value, "unknown obstacle type '" + std::string(type_text) + "'",
        "Obst_type");
    }
  }
  const auto pos = row.position(c, position_prefix(Group::obstacle));
  if (pos) {
    o.pos = *pos;
    if (auto shape = row.shape(c, "Obst_poly_true", frame_of(*pos), true)) {
      o.poly_true = std::move(*shape);
    }
    o.poly_perceived = row.shape(c, "Obst_poly_perceived", frame_of(*pos), false);
  }
  o.ntd = row.required_number(c, "Obst_NTD", true);
  if (!row.ok()) {
    return std::nullopt;
  }
  return o;
}

std::optional<TrafficControllerState> read_controller(Row & row, const Columns & c)
{
  TrafficControllerState t;
  t.id = std::string(row.required_text(c, schema::kControllerId));
  t.phase = parse_phase(row.required_text(c, "Traffic_Ctrl_phase"));
  if (row.filled(c, "Traffic_Ctrl_phase_perceived")) {
    t.phase_perceived = parse_phase(row.text(c, "Traffic_Ctrl_phase_perceived"));
  }
  if (!row.ok()) {
    return std::nullopt;
  }
  return t;
}

struct Builder
{
  Trace trace;
  SourceMap source;

  template <typename Record>
  void add(
    std::map<std::string, std::vector<Record>> & into, std::map<std::string, SourceMap::Rows> & rows,
    Record record, const std::string & file, std::int64_t line)
  {
    auto & where = rows[record.id];
    where.file = file;
    where.rows.push_back(line);
    into[record.id].push_back(std::move(record));
  }
};

// A group slot with an empty id cell must be entirely empty.
bool group_present(Row & row, const GroupColumns & group)
{
  const auto id = id_column(group.kind);
  if (row.filled(group.columns, id)) {
    return true;
  }
  for (const auto & [name, index] : group.columns) {
    if (name != id && row.filled(group.columns, name)) {
      row.fail(
        FindingCode::missing_value,
        "'" + name + "' is filled while '" + std::string(id) + "' is empty", id);
      break;
    }
  }
  return false;
}

void read_group(
  Row & row, const GroupColumns & group, double time, std::int64_t step, Builder & out,
  const std::string & file)
{
  if (!group_present(row, group)) {
    return;
  }
  switch (group.kind) {
    case Group::actor:
      if (auto a = read_actor(row, group.columns)) {
        a->time = time;
        a->step = step;
        out.add(out.trace.actors, out.source.actors, std::move(*a), file, row.line());
      }
      break;
    case Group::obstacle:
      if (auto o = read_obstacle(row, group.columns)) {
        o->time = time;
        o->step = step;
        out.add(out.trace.obstacles, out.source.obstacles, std::move(*o), file, row.line());
      }
      break;
    case Group::controller:
      if (auto t = read_controller(row, group.columns)) {
        t->time = time;
        t->step = step;
        out.add(out.trace.controllers, out.source.controllers, std::move(*t), file, row.line());
      }
      break;
    case Group::common:
    case Group::vut: break;
  }
}

bool row_width_ok(Row & row, const csv::Record & record, const Header & header)
{
  if (record.cells.size() != header.width) {
    row.fail(
      FindingCode::malformed_value,
      "row has " + std::to_string(record.cells.size()) + " cells, header has " +
        std::to_string(header.width),
      "");
    return false;
  }
  return true;
}

std::optional<csv::Document> load(std::string_view content, Context & ctx)
{
  csv::Document doc = csv::parse(content);
  if (!doc.error.empty()) {
    ctx.error(FindingCode::malformed_value, doc.error, doc.error_line);
    return std::nullopt;
  }
  if (doc.records.empty()) {
    ctx.error(FindingCode::missing_header, "file is empty");
    return std::nullopt;
  }
  return doc;
}

void apply_name(const std::optional<RunName> & name, Trace & trace, Context & ctx, std::string_view raw)
{
  if (!name || name->run_id < 1) {
    ctx.error(
      FindingCode::invalid_file_name,
      "'" + std::string(raw) + "' does not follow the results_<testcase_id>_r<run_id> convention");
    return;
  }
  if (!name->canonical) {
    ctx.warning(
      FindingCode::non_canonical_file_name, "'" + std::string(raw) + "' uses a non-canonical name");
  }
  trace.testcase_id = name->testcase_id;
  trace.run_id = name->run_id;
}

void finish(Builder & built, ParseResult & result)
{
  if (result.report.has_errors()) {
    return;
  }
  result.report.append(validate_trace(built.trace, &built.source));
  if (result.report.has_errors()) {
    return;
  }
  built.trace.declared_frequency = nominal_rate(built.trace.vut);
  normalize_obstacle_actors(built.trace);
  result.trace = std::move(built.trace);
}

// Reads the rows of one role file. Perceived files are returned as raw rows
// so their shapes can be parsed in the frame of the matching true record.
struct PerceivedRow
{
  std::string id;
  std::int64_t step{};
  std::int64_t line{};
  std::string shape_column;
  std::string shape;
  std::string phase;
};

std::string_view perceived_column(Group group)
{
  switch (group) {
    case Group::actor: return "Actor_bbox_perceived";
    case Group::obstacle: return "Obst_poly_perceived";
    case Group::controller: return "Traffic_Ctrl_phase_perceived";
    case Group::common:
    case Group::vut: break;
  }
  return {};
}

void read_entity_file(
  const csv::Document & doc, Role role, Context & ctx, Builder & out,
  std::vector<PerceivedRow> * perceived)
{
  const auto header = read_header(doc.records.front(), role, ctx);
  if (!header) {
    return;
  }
  for (std::size_t r = 1; r < doc.records.size(); ++r) {
    const auto & record = doc.records[r];
    Row row(record, ctx);
    if (!row_width_ok(row, record, *header)) {
      continue;
    }
    const double time = row.required_number(header->common, schema::kTime);
    const auto step = row.integer(header->common, schema::kStep);
    if (!row.ok() || !step) {
      continue;
    }
    for (const auto & group : header->groups) {
      if (perceived == nullptr) {
        read_group(row, group, time, *step, out, ctx.file);
        continue;
      }
      if (!group_present(row, group)) {
        continue;
      }
      PerceivedRow p;
      p.id = std::string(row.text(group.columns, id_column(group.kind)));
      p.step = *step;
      p.line = record.line;
      p.shape_column = std::string(perceived_column(group.kind));
      p.shape = std::string(row.text(group.columns, p.shape_column));
      perceived->push_back(std::move(p));
    }
  }
}

template <typename Record, typename Apply>
void merge_perceived(
  std::map<std::string, std::vector<Record>> & records, const std::vector<PerceivedRow> & rows,
  Context & ctx, Apply apply)
{
  for (const auto & p : rows) {
    Record * target = nullptr;
    const auto it = records.find(p.id);
    if (it != records.end()) {
      for (auto & rec : it->second) {
        if (rec.step == p.step) {
          target = &rec;
          break;
        }
      }
    }
    if (target == nullptr) {
      ctx.warning(
        FindingCode::perceived_without_truth,
        "perceived record for '" + p.id + "' at step " + std::to_string(p.step) +
          " has no ground-truth record",
        p.line);
      continue;
    }
    if (p.shape.empty()) {
      continue;
    }
    apply(*target, p);
  }
}

template <typename Map>
void check_time_sync(
  const Map & entities, const std::unordered_map<std::int64_t, double> & vut_time, double period,
  const std::map<std::string, SourceMap::Rows> & rows, Context & ctx)
{
  if (!(period > 0.0)) {
    return;
  }
  for (const auto & [id, records] : entities) {
    const auto & where = rows.at(id);
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto it = vut_time.find(records[i].step);
      if (it == vut_time.end()) {
        continue;
      }
      if (std::abs(records[i].time - it->second) > 0.5 * period) {
        ctx.report.add(
          Severity::warning, FindingCode::time_mismatch,
          "'" + id + "' time " + text::format_number(records[i].time) + " s differs from the VUT time " +
            text::format_number(it->second) + " s at step " + std::to_string(records[i].step),
          Location{where.file, i < where.rows.size() ? where.rows[i] : 0, "Time"});
      }
    }
  }
}

std::string lowercase(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

ParseResult parse_flat_text(
  std::string_view content, std::string_view file_name, const ParseOptions & options)
{
  ParseResult result;
  Context ctx{std::string(file_name), options, result.report};
  Builder built;
  apply_name(parse_flat_name(file_name), built.trace, ctx, file_name);

  const auto doc = load(content, ctx);
  if (!doc) {
    return result;
  }
  const auto header = read_header(doc->records.front(), Role::flat, ctx);
  if (!header) {
    return result;
  }
  built.source.vut.file = ctx.file;
  for (std::size_t r = 1; r < doc->records.size(); ++r) {
    const auto & record = doc->records[r];
    Row row(record, ctx);
    if (!row_width_ok(row, record, *header)) {
      continue;
    }
    auto vut = read_vut(row, *header);
    if (!vut) {
      continue;
    }
    for (const auto & group : header->groups) {
      read_group(row, group, vut->time, vut->step, built, ctx.file);
    }
    built.trace.vut.push_back(std::move(*vut));
    built.source.vut.rows.push_back(record.line);
  }
  finish(built, result);
  return result;
}

ParseResult parse_flat(const fs::path & file, const ParseOptions & options)
{
  std::string content;
  try {
    content = csv::read_text(file);
  } catch (const std::exception & e) {
    ParseResult result;
    result.report.add(
      Severity::error, FindingCode::io_failure, e.what(), Location{file.string(), 0, {}});
    return result;
  }
  return parse_flat_text(content, file.filename().string(), options);
}

ParseResult parse_distributed(const fs::path & folder, const ParseOptions & options)
{
  ParseResult result;
  Context ctx{folder.filename().string(), options, result.report};
  Builder built;

  std::error_code ec;
  if (!fs::is_directory(folder, ec)) {
    ctx.error(FindingCode::io_failure, "'" + folder.string() + "' is not a readable folder");
    return result;
  }
  auto folder_label = folder.filename().string();
  if (folder_label.empty()) {
    folder_label = folder.parent_path().filename().string();
  }
  ctx.file = folder_label;
  apply_name(parse_folder_name(folder_label), built.trace, ctx, folder_label);

  // Role name -> file actually used. Case-insensitive matches are accepted
  // with a warning; other csv files are reported and ignored.
  std::map<std::string, fs::path, std::less<>> files;
  std::vector<fs::path> entries;
  for (const auto & entry : fs::directory_iterator(folder, ec)) {
    if (entry.is_regular_file()) {
      entries.push_back(entry.path());
    }
  }
  std::sort(entries.begin(), entries.end());
  for (const auto & path : entries) {
    const std::string name = path.filename().string();
    if (lowercase(path.extension().string()) != ".csv") {
      continue;
    }
    const auto exact = std::find(role::kAll.begin(), role::kAll.end(), name);
    if (exact != role::kAll.end()) {
      files[std::string(*exact)] = path;
      continue;
    }
    bool matched = false;
    for (const auto role_name : role::kAll) {
      if (lowercase(role_name) == lowercase(name)) {
        ctx.warning(
          FindingCode::role_file_misnamed,
          "'" + name + "' read as '" + std::string(role_name) + "'");
        files.emplace(std::string(role_name), path);
        matched = true;
      }
    }
    if (!matched) {
      ctx.warning(
        FindingCode::role_file_misnamed, "'" + name + "' is not one of the role files; ignored");
    }
  }

  const auto vut_file = files.find(role::kVut);
  if (vut_file == files.end()) {
    ctx.error(FindingCode::missing_vut_file, "folder has no " + std::string(role::kVut));
    return result;
  }

  auto load_file = [&](std::string_view role_name, Context & file_ctx) -> std::optional<csv::Document> {
    const auto it = files.find(role_name);
    if (it == files.end()) {
      return std::nullopt;
    }
    file_ctx.file = (fs::path(folder_label) / it->second.filename()).generic_string();
    try {
      return load(csv::read_text(it->second), file_ctx);
    } catch (const std::exception & e) {
      file_ctx.error(FindingCode::io_failure, e.what());
      return std::nullopt;
    }
  };

  {
    Context vctx{{}, options, result.report};
    const auto doc = load_file(role::kVut, vctx);
    if (!doc) {
      return result;
    }
    const auto header = read_header(doc->records.front(), Role::vut, vctx);
    if (!header) {
      return result;
    }
    built.source.vut.file = vctx.file;
    for (std::size_t r = 1; r < doc->records.size(); ++r) {
      const auto & record = doc->records[r];
      Row row(record, vctx);
      if (!row_width_ok(row, record, *header)) {
        continue;
      }
      if (auto vut = read_vut(row, *header)) {
        built.trace.vut.push_back(std::move(*vut));
        built.source.vut.rows.push_back(record.line);
      }
    }
  }

  const std::pair<std::string_view, Role> true_roles[] = {
    {role::kActorsTrue, Role::actors},
    {role::kObstaclesTrue, Role::obstacles},
    {role::kLightsTrue, Role::lights}};
  for (const auto & [role_name, role] : true_roles) {
    Context ectx{{}, options, result.report};
    if (const auto doc = load_file(role_name, ectx)) {
      read_entity_file(*doc, role, ectx, built, nullptr);
    }
  }

  const std::pair<std::string_view, Role> perceived_roles[] = {
    {role::kActorsPerceived, Role::actors_perceived},
    {role::kObstaclesPerceived, Role::obstacles_perceived},
    {role::kLightsPerceived, Role::lights_perceived}};
  for (const auto & [role_name, role] : perceived_roles) {
    Context pctx{{}, options, result.report};
    const auto doc = load_file(role_name, pctx);
    if (!doc) {
      continue;
    }
    std::vector<PerceivedRow> rows;
    read_entity_file(*doc, role, pctx, built, &rows);
    auto shape_of = [&](const PerceivedRow & p, Frame frame) -> std::optional<BoundingShape> {
      try {
        return parse_shape(p.shape, frame, options.axis_order);
      } catch (const Error & e) {
        pctx.error(
          FindingCode::malformed_value, std::string(to_string(e.code())) + ": " + e.what(), p.line,
          p.shape_column);
        return std::nullopt;
      }
    };
    if (role == Role::actors_perceived) {
      merge_perceived(built.trace.actors, rows, pctx, [&](ActorState & a, const PerceivedRow & p) {
        a.bbox_perceived = shape_of(p, frame_of(a.pos));
      });
    } else if (role == Role::obstacles_perceived) {
      merge_perceived(built.trace.obstacles, rows, pctx, [&](ObstacleState & o, const PerceivedRow & p) {
        o.poly_perceived = shape_of(p, frame_of(o.pos));
      });
    } else {
      merge_perceived(
        built.trace.controllers, rows, pctx,
        [&](TrafficControllerState & t, const PerceivedRow & p) { t.phase_perceived = parse_phase(p.shape); });
    }
  }

  std::unordered_map<std::int64_t, double> vut_time;
  for (const auto & s : built.trace.vut) {
    vut_time.emplace(s.step, s.time);
  }
  const double period = median_period(built.trace.vut);
  check_time_sync(built.trace.actors, vut_time, period, built.source.actors, ctx);
  check_time_sync(built.trace.obstacles, vut_time, period, built.source.obstacles, ctx);
  check_time_sync(built.trace.controllers, vut_time, period, built.source.controllers, ctx);

  finish(built, result);
  return result;
}

ParseResult parse_any(
  const fs::path & path, std::optional<LayoutKind> hint, const ParseOptions & options)
{
  const auto kind = hint ? hint : detect_layout(path);
  if (!kind) {
    ParseResult result;
    result.report.add(
      Severity::error, FindingCode::io_failure, "'" + path.string() + "' does not exist",
      Location{path.string(), 0, {}});
    return result;
  }
  return *kind == LayoutKind::flat ? parse_flat(path, options) : parse_distributed(path, options);
}

}  // namespace vista
