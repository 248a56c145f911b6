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

#include "vista/writer.hpp"

#include "vista/csv.hpp"
#include "vista/error.hpp"
#include "vista/schema.hpp"
#include "vista/text.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace vista
{

namespace
{

namespace fs = std::filesystem;
using schema::Group;
using Row = std::vector<std::string>;

std::string num(double v) { return text::format_number(v); }
std::string opt_num(const std::optional<double> & v) { return v ? num(*v) : std::string{}; }
std::string flag(bool v) { return v ? "1" : "0"; }

std::vector<std::string_view> group_columns(
  Group group, const std::function<bool(std::string_view)> & include)
{
  std::vector<std::string_view> out;
  for (const auto & spec : schema::columns()) {
    if (spec.group == group && include(spec.name)) {
      out.push_back(spec.name);
    }
  }
  return out;
}

// --- VUT ---------------------------------------------------------------

std::vector<std::string_view> vut_columns(const std::vector<VutState> & vut)
{
  const bool z = std::any_of(vut.begin(), vut.end(), [](const auto & s) { return s.pos.elev.has_value(); });
  const bool pitch = std::any_of(vut.begin(), vut.end(), [](const auto & s) { return s.pitch_rate.has_value(); });
  const bool roll = std::any_of(vut.begin(), vut.end(), [](const auto & s) { return s.roll_rate.has_value(); });
  return group_columns(Group::vut, [&](std::string_view name) {
    if (name == "VUT_pos_z") {
      return z;
    }
    if (name == "VUT_pitch_rate") {
      return pitch;
    }
    if (name == "VUT_roll_rate") {
      return roll;
    }
    return true;
  });
}

std::string vut_cell(const VutState & s, std::string_view c)
{
  if (c == "VUT_pos_lat") return num(s.pos.lat);
  if (c == "VUT_pos_lon") return num(s.pos.lon);
  if (c == "VUT_pos_z") return opt_num(s.pos.elev);
  if (c == "VUT_travelled_dist") return num(s.travelled);
  if (c == "VUT_speed") return num(s.speed);
  if (c == "VUT_acc_lat") return num(s.acc_lat);
  if (c == "VUT_acc_long") return num(s.acc_long);
  if (c == "VUT_yaw_rate") return num(s.yaw_rate);
  if (c == "VUT_pitch_rate") return opt_num(s.pitch_rate);
  if (c == "VUT_roll_rate") return opt_num(s.roll_rate);
  if (c == "VUT_heading") return num(s.heading.value());
  if (c == "VUT_ind_left_front") return flag(s.indicators.left_front);
  if (c == "VUT_ind_left_rear") return flag(s.indicators.left_rear);
  if (c == "VUT_ind_right_front") return flag(s.indicators.right_front);
  if (c == "VUT_ind_right_rear") return flag(s.indicators.right_rear);
  if (c == "VUT_ind_brake") return flag(s.indicators.brake);
  if (c == "VUT_ind_reverse") return flag(s.indicators.reverse);
  if (c == "VUT_ind_hazard") return flag(s.indicators.hazard);
  if (c == "VUT_throttle") return num(s.throttle);
  if (c == "VUT_brake") return num(s.brake);
  if (c == "VUT_steering_angle") return num(s.steering_angle);
  if (c == "VUT_drive_status") return to_string(s.drive_status);
  if (c == "VUT_special_op") return to_string(s.special_op);
  return {};
}

// --- positions ---------------------------------------------------------

struct PositionUse
{
  bool geo{false};
  bool vcs{false};
  bool z{false};
};

void note(PositionUse & use, const EntityPosition & pos)
{
  std::visit(
    [&](const auto & p) {
      using T = std::decay_t<decltype(p)>;
      if constexpr (std::is_same_v<T, GeoPosition>) {
        use.geo = true;
        use.z = use.z || p.elev.has_value();
      } else {
        use.vcs = true;
        use.z = use.z || p.z.has_value();
      }
    },
    pos);
}

bool position_column_used(const PositionUse & use, std::string_view name)
{
  const auto suffix = name.substr(name.rfind('_') + 1);
  if (suffix == "lat" || suffix == "lon") {
    return use.geo || !use.vcs;
  }
  if (suffix == "x" || suffix == "y") {
    return use.vcs;
  }
  return use.z;
}

std::string position_cell(const EntityPosition & pos, std::string_view name)
{
  const auto suffix = name.substr(name.rfind('_') + 1);
  if (const auto * g = std::get_if<GeoPosition>(&pos)) {
    if (suffix == "lat") return num(g->lat);
    if (suffix == "lon") return num(g->lon);
    if (suffix == "z") return opt_num(g->elev);
    return {};
  }
  const auto & v = std::get<VcsPosition>(pos);
  if (suffix == "x") return num(v.x);
  if (suffix == "y") return num(v.y);
  if (suffix == "z") return opt_num(v.z);
  return {};
}

bool is_position_column(std::string_view name) { return name.find("_pos_true_") != std::string_view::npos; }

// --- entity groups -----------------------------------------------------

std::vector<std::string_view> actor_columns(
  const std::vector<const ActorState *> & records, bool with_perceived)
{
  PositionUse use;
  bool bbox = false;
  bool perceived = false;
  for (const auto * a : records) {
    note(use, a->pos);
    bbox = bbox || a->bbox_true.has_value();
    perceived = perceived || a->bbox_perceived.has_value();
  }
  return group_columns(Group::actor, [&](std::string_view name) {
    if (is_position_column(name)) {
      return position_column_used(use, name);
    }
    if (name == "Actor_bbox_true") {
      return bbox;
    }
    if (name == "Actor_bbox_perceived") {
      return with_perceived && perceived;
    }
    return true;
  });
}

std::string actor_cell(const ActorState & a, std::string_view c, AxisOrder order)
{
  if (c == "Actor_Id") return a.id;
  if (c == "Actor_type") return to_string(a.type);
  if (is_position_column(c)) return position_cell(a.pos, c);
  if (c == "Actor_bbox_true") return a.bbox_true ? serialize_shape(*a.bbox_true, order) : std::string{};
  if (c == "Actor_bbox_perceived") {
    return a.bbox_perceived ? serialize_shape(*a.bbox_perceived, order) : std::string{};
  }
  if (c == "Actor_vel_abs") return num(a.speed);
  if (c == "Actor_vel_lat") return num(a.vel_lat);
  if (c == "Actor_vel_long") return num(a.vel_long);
  if (c == "Actor_acc_lat") return num(a.acc_lat);
  if (c == "Actor_acc_long") return num(a.acc_long);
  if (c == "Actor_heading") return a.heading ? num(a.heading->value()) : std::string{};
  if (c == "Actor_TTC") return num(a.ttc);
  return {};
}

std::vector<std::string_view> obstacle_columns(
  const std::vector<const ObstacleState *> & records, bool with_perceived)
{
  PositionUse use;
  bool perceived = false;
  for (const auto * o : records) {
    note(use, o->pos);
    perceived = perceived || o->poly_perceived.has_value();
  }
  return group_columns(Group::obstacle, [&](std::string_view name) {
    if (is_position_column(name)) {
      return position_column_used(use, name);
    }
    if (name == "Obst_poly_perceived") {
      return with_perceived && perceived;
    }
    return true;
  });
}

std::string obstacle_cell(const ObstacleState & o, std::string_view c, AxisOrder order)
{
  if (c == "Obst_Id") return o.id;
  if (c == "Obst_type") return std::to_string(o.type.code);
  if (is_position_column(c)) return position_cell(o.pos, c);
  if (c == "Obst_poly_true") return serialize_shape(o.poly_true, order);
  if (c == "Obst_poly_perceived") {
    return o.poly_perceived ? serialize_shape(*o.poly_perceived, order) : std::string{};
  }
  if (c == "Obst_NTD") return num(o.ntd);
  return {};
}

std::vector<std::string_view> controller_columns(
  const std::vector<const TrafficControllerState *> & records, bool with_perceived)
{
  const bool perceived = std::any_of(
    records.begin(), records.end(), [](const auto * t) { return t->phase_perceived.has_value(); });
  return group_columns(Group::controller, [&](std::string_view name) {
    return name != "Traffic_Ctrl_phase_perceived" || (with_perceived && perceived);
  });
}

std::string controller_cell(const TrafficControllerState & t, std::string_view c, AxisOrder)
{
  if (c == "Traffic_Ctrl_Id") return t.id;
  if (c == "Traffic_Ctrl_phase") return to_string(t.phase);
  if (c == "Traffic_Ctrl_phase_perceived") {
    return t.phase_perceived ? to_string(*t.phase_perceived) : std::string{};
  }
  return {};
}

template <typename Record>
std::vector<const Record *> pointers(const std::vector<Record> & records)
{
  std::vector<const Record *> out;
  out.reserve(records.size());
  for (const auto & r : records) {
    out.push_back(&r);
  }
  return out;
}

template <typename Record>
std::vector<const Record *> all_pointers(const std::map<std::string, std::vector<Record>> & map)
{
  std::vector<const Record *> out;
  for (const auto & [id, records] : map) {
    for (const auto & r : records) {
      out.push_back(&r);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Record * l, const Record * r) {
    return std::tie(l->step, l->id) < std::tie(r->step, r->id);
  });
  return out;
}

// One entity column group in the flat layout, with the record at each step.
struct Slot
{
  std::vector<std::string_view> columns;
  std::unordered_map<std::int64_t, std::function<std::string(std::string_view)>> cells;
};

template <typename Record, typename ColumnsFn, typename CellFn>
void add_slots(
  std::vector<Slot> & slots, const std::map<std::string, std::vector<Record>> & map,
  ColumnsFn columns_fn, CellFn cell_fn, AxisOrder order)
{
  for (const auto & [id, records] : map) {
    Slot slot;
    slot.columns = columns_fn(pointers(records), true);
    for (const auto & rec : records) {
      const Record * r = &rec;
      slot.cells.emplace(rec.step, [r, cell_fn, order](std::string_view c) { return cell_fn(*r, c, order); });
    }
    slots.push_back(std::move(slot));
  }
}

Row header_row(const std::vector<std::string_view> & lead, const std::vector<std::string_view> & more)
{
  Row out;
  for (const auto c : lead) {
    out.emplace_back(c);
  }
  for (const auto c : more) {
    out.emplace_back(c);
  }
  return out;
}

void write_file(const fs::path & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io_failure, "cannot open '" + path.string() + "' for writing");
  }
  out << content;
  out.close();
  if (!out) {
    throw Error(Errc::io_failure, "failed writing '" + path.string() + "'");
  }
}

std::string vut_text(const Trace & trace)
{
  const auto cols = vut_columns(trace.vut);
  std::string out = csv::format_record(header_row({schema::kTime, schema::kStep}, cols));
  for (const auto & s : trace.vut) {
    Row row{num(s.time), std::to_string(s.step)};
    for (const auto c : cols) {
      row.push_back(vut_cell(s, c));
    }
    out += csv::format_record(row);
  }
  return out;
}

template <typename Record, typename ColumnsFn, typename CellFn>
std::string entity_text(
  const std::map<std::string, std::vector<Record>> & map, ColumnsFn columns_fn, CellFn cell_fn,
  AxisOrder order)
{
  const auto records = all_pointers(map);
  const auto cols = columns_fn(records, false);
  std::string out = csv::format_record(header_row({schema::kTime, schema::kStep}, cols));
  for (const auto * r : records) {
    Row row{num(r->time), std::to_string(r->step)};
    for (const auto c : cols) {
      row.push_back(cell_fn(*r, c, order));
    }
    out += csv::format_record(row);
  }
  return out;
}

template <typename Record, typename Has, typename Cell>
std::optional<std::string> perceived_text(
  const std::map<std::string, std::vector<Record>> & map, std::string_view id_col,
  std::string_view value_col, Has has, Cell cell)
{
  std::string out;
  bool any = false;
  for (const auto * r : all_pointers(map)) {
    if (!has(*r)) {
      continue;
    }
    if (!any) {
      out = csv::format_record(
        Row{std::string(schema::kTime), std::string(schema::kStep), std::string(id_col), std::string(value_col)});
      any = true;
    }
    out += csv::format_record(Row{num(r->time), std::to_string(r->step), r->id, cell(*r)});
  }
  if (!any) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

std::string flat_text(const Trace & trace, AxisOrder order)
{
  const auto vut_cols = vut_columns(trace.vut);
  std::vector<Slot> slots;
  add_slots(slots, trace.actors, actor_columns, actor_cell, order);
  add_slots(slots, trace.obstacles, obstacle_columns, obstacle_cell, order);
  add_slots(slots, trace.controllers, controller_columns, controller_cell, order);

  Row header = header_row({schema::kTime, schema::kStep}, vut_cols);
  for (const auto & slot : slots) {
    for (const auto c : slot.columns) {
      header.emplace_back(c);
    }
  }
  std::string out = csv::format_record(header);
  for (const auto & s : trace.vut) {
    Row row{num(s.time), std::to_string(s.step)};
    for (const auto c : vut_cols) {
      row.push_back(vut_cell(s, c));
    }
    for (const auto & slot : slots) {
      const auto it = slot.cells.find(s.step);
      for (const auto c : slot.columns) {
        row.push_back(it == slot.cells.end() ? std::string{} : it->second(c));
      }
    }
    out += csv::format_record(row);
  }
  return out;
}

void write_trace(const Trace & trace, const FileLayout & layout, AxisOrder order)
{
  std::error_code ec;
  if (layout.kind == LayoutKind::flat) {
    if (layout.root.has_parent_path()) {
      fs::create_directories(layout.root.parent_path(), ec);
    }
    write_file(layout.root, flat_text(trace, order));
    return;
  }

  fs::create_directories(layout.root, ec);
  if (!fs::is_directory(layout.root)) {
    throw Error(Errc::io_failure, "cannot create folder '" + layout.root.string() + "'");
  }
  for (const auto role_name : role::kAll) {
    fs::remove(layout.root / role_name, ec);
  }
  write_file(layout.root / role::kVut, vut_text(trace));
  write_file(
    layout.root / role::kActorsTrue, entity_text(trace.actors, actor_columns, actor_cell, order));
  write_file(
    layout.root / role::kObstaclesTrue,
    entity_text(trace.obstacles, obstacle_columns, obstacle_cell, order));
  write_file(
    layout.root / role::kLightsTrue,
    entity_text(trace.controllers, controller_columns, controller_cell, order));

  if (const auto text = perceived_text(
        trace.actors, schema::kActorId, "Actor_bbox_perceived",
        [](const ActorState & a) { return a.bbox_perceived.has_value(); },
        [order](const ActorState & a) { return serialize_shape(*a.bbox_perceived, order); })) {
    write_file(layout.root / role::kActorsPerceived, *text);
  }
  if (const auto text = perceived_text(
        trace.obstacles, schema::kObstacleId, "Obst_poly_perceived",
        [](const ObstacleState & o) { return o.poly_perceived.has_value(); },
        [order](const ObstacleState & o) { return serialize_shape(*o.poly_perceived, order); })) {
    write_file(layout.root / role::kObstaclesPerceived, *text);
  }
  if (const auto text = perceived_text(
        trace.controllers, schema::kControllerId, "Traffic_Ctrl_phase_perceived",
        [](const TrafficControllerState & t) { return t.phase_perceived.has_value(); },
        [](const TrafficControllerState & t) { return to_string(*t.phase_perceived); })) {
    write_file(layout.root / role::kLightsPerceived, *text);
  }
}

}  // namespace vista
