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

#include "vista/schema.hpp"

#include "json.hpp"

#include <array>

namespace vista::schema
{

namespace
{

using G = Group;
using P = Presence;

// clang-format off
constexpr std::array kColumns{
  ColumnSpec{"Time", G::common, "s", "float", P::mandatory, false, false, "simulation time, starting at 0"},
  ColumnSpec{"Step_number", G::common, "-", "integer", P::mandatory, false, false, "simulation step ordinal"},

  ColumnSpec{"VUT_pos_lat", G::vut, "deg", "float", P::mandatory, false, false, "WGS84 latitude at CoG"},
  ColumnSpec{"VUT_pos_lon", G::vut, "deg", "float", P::mandatory, false, false, "WGS84 longitude at CoG"},
  ColumnSpec{"VUT_pos_z", G::vut, "m", "float", P::optional, true, false, "elevation above the common reference plane"},
  ColumnSpec{"VUT_travelled_dist", G::vut, "m", "float", P::mandatory, false, false, "distance travelled since t = 0"},
  ColumnSpec{"VUT_speed", G::vut, "m/s", "float", P::mandatory, false, false, "speed"},
  ColumnSpec{"VUT_acc_lat", G::vut, "m/s^2", "float", P::mandatory, false, false, "lateral acceleration at CoG, local frame"},
  ColumnSpec{"VUT_acc_long", G::vut, "m/s^2", "float", P::mandatory, false, false, "longitudinal acceleration at CoG, local frame"},
  ColumnSpec{"VUT_yaw_rate", G::vut, "deg/s", "float", P::mandatory, false, false, "yaw rate, clockwise positive"},
  ColumnSpec{"VUT_pitch_rate", G::vut, "deg/s", "float", P::optional, true, false, "pitch rate"},
  ColumnSpec{"VUT_roll_rate", G::vut, "deg/s", "float", P::optional, true, false, "roll rate"},
  ColumnSpec{"VUT_heading", G::vut, "deg", "float", P::mandatory, false, false, "heading, 0 = North, clockwise"},
  ColumnSpec{"VUT_ind_left_front", G::vut, "-", "flag", P::mandatory, false, false, "left front direction indicator (0/1)"},
  ColumnSpec{"VUT_ind_left_rear", G::vut, "-", "flag", P::mandatory, false, false, "left rear direction indicator (0/1)"},
  ColumnSpec{"VUT_ind_right_front", G::vut, "-", "flag", P::mandatory, false, false, "right front direction indicator (0/1)"},
  ColumnSpec{"VUT_ind_right_rear", G::vut, "-", "flag", P::mandatory, false, false, "right rear direction indicator (0/1)"},
  ColumnSpec{"VUT_ind_brake", G::vut, "-", "flag", P::mandatory, false, false, "brake light (0/1)"},
  ColumnSpec{"VUT_ind_reverse", G::vut, "-", "flag", P::mandatory, false, false, "reverse light (0/1)"},
  ColumnSpec{"VUT_ind_hazard", G::vut, "-", "flag", P::mandatory, false, false, "hazard lights (0/1)"},
  ColumnSpec{"VUT_throttle", G::vut, "-", "float", P::mandatory, false, false, "throttle level in [0, 1]"},
  ColumnSpec{"VUT_brake", G::vut, "-", "float", P::mandatory, false, false, "brake level in [0, 1]"},
  ColumnSpec{"VUT_steering_angle", G::vut, "deg", "float", P::mandatory, false, false, "steering wheel angle"},
  ColumnSpec{"VUT_drive_status", G::vut, "-", "enum", P::mandatory, false, false, "autonomous | manual | teleoperation | extension tag"},
  ColumnSpec{"VUT_special_op", G::vut, "-", "enum", P::mandatory, false, false, "normal | environmental_service | extension tag"},

  ColumnSpec{"Actor_Id", G::actor, "-", "string", P::mandatory, false, false, "unique actor id; starts an actor column group"},
  ColumnSpec{"Actor_type", G::actor, "-", "enum", P::mandatory, false, false, "tsv | vru_pedestrian | vru_cyclist | vru_pmd | extension code"},
  ColumnSpec{"Actor_pos_true_lat", G::actor, "deg", "float", P::position_pair, true, false, "WGS84 latitude of the geometric centre"},
  ColumnSpec{"Actor_pos_true_lon", G::actor, "deg", "float", P::position_pair, true, false, "WGS84 longitude of the geometric centre"},
  ColumnSpec{"Actor_pos_true_x", G::actor, "m", "float", P::position_pair, true, false, "VCS x of the geometric centre"},
  ColumnSpec{"Actor_pos_true_y", G::actor, "m", "float", P::position_pair, true, false, "VCS y of the geometric centre"},
  ColumnSpec{"Actor_pos_true_z", G::actor, "m", "float", P::optional, true, false, "elevation (WGS84) or VCS z (down)"},
  ColumnSpec{"Actor_bbox_true", G::actor, "-", "Array<Position>", P::optional, true, false, "ground-truth bounding box"},
  ColumnSpec{"Actor_bbox_perceived", G::actor, "-", "Array<Position>", P::optional, true, true, "perceived bounding box"},
  ColumnSpec{"Actor_vel_abs", G::actor, "m/s", "float", P::mandatory, false, false, "speed"},
  ColumnSpec{"Actor_vel_lat", G::actor, "m/s", "float", P::mandatory, false, false, "lateral velocity, own frame"},
  ColumnSpec{"Actor_vel_long", G::actor, "m/s", "float", P::mandatory, false, false, "longitudinal velocity, own frame"},
  ColumnSpec{"Actor_acc_lat", G::actor, "m/s^2", "float", P::mandatory, false, false, "lateral acceleration, own frame"},
  ColumnSpec{"Actor_acc_long", G::actor, "m/s^2", "float", P::mandatory, false, false, "longitudinal acceleration, own frame"},
  ColumnSpec{"Actor_heading", G::actor, "deg", "float", P::mandatory, true, false, "heading w.r.t. North; may be blank when unknown"},
  ColumnSpec{"Actor_TTC", G::actor, "s", "float|inf", P::mandatory, false, false, "nearest temporal distance; inf when not reachable"},

  ColumnSpec{"Obst_Id", G::obstacle, "-", "string", P::mandatory, false, false, "unique obstacle id; starts an obstacle column group"},
  ColumnSpec{"Obst_type", G::obstacle, "-", "integer", P::mandatory, false, false, "obstacle type code, e.g. construction_cones = 100"},
  ColumnSpec{"Obst_pos_true_lat", G::obstacle, "deg", "float", P::position_pair, true, false, "WGS84 latitude of the obstacle centre"},
  ColumnSpec{"Obst_pos_true_lon", G::obstacle, "deg", "float", P::position_pair, true, false, "WGS84 longitude of the obstacle centre"},
  ColumnSpec{"Obst_pos_true_x", G::obstacle, "m", "float", P::position_pair, true, false, "VCS x of the obstacle centre"},
  ColumnSpec{"Obst_pos_true_y", G::obstacle, "m", "float", P::position_pair, true, false, "VCS y of the obstacle centre"},
  ColumnSpec{"Obst_pos_true_z", G::obstacle, "m", "float", P::optional, true, false, "elevation (WGS84) or VCS z (down)"},
  ColumnSpec{"Obst_poly_true", G::obstacle, "-", "Array<Position>", P::mandatory, false, false, "ground-truth bounding polygon"},
  ColumnSpec{"Obst_poly_perceived", G::obstacle, "-", "Array<Position>", P::optional, true, true, "perceived bounding polygon"},
  ColumnSpec{"Obst_NTD", G::obstacle, "s", "float|inf", P::mandatory, false, false, "nearest temporal distance; inf when not reachable"},

  ColumnSpec{"Traffic_Ctrl_Id", G::controller, "-", "string", P::mandatory, false, false, "traffic light controller id; starts a controller column group"},
  ColumnSpec{"Traffic_Ctrl_phase", G::controller, "-", "enum", P::mandatory, false, false, "go | stop | go_exclusive | extension tag"},
  ColumnSpec{"Traffic_Ctrl_phase_perceived", G::controller, "-", "enum", P::optional, true, true, "perceived phase"},
};
// clang-format on

}  // namespace

std::span<const ColumnSpec> columns() { return kColumns; }

const ColumnSpec * find(std::string_view name)
{
  for (const auto & column : kColumns) {
    if (column.name == name) {
      return &column;
    }
  }
  return nullptr;
}

std::string_view to_string(Group group)
{
  switch (group) {
    case Group::common: return "common";
    case Group::vut: return "vut";
    case Group::actor: return "actor";
    case Group::obstacle: return "obstacle";
    case Group::controller: return "controller";
  }
  return "common";
}

std::string_view to_string(Presence presence)
{
  switch (presence) {
    case Presence::mandatory: return "mandatory";
    case Presence::optional: return "optional";
    case Presence::position_pair: return "position_pair";
  }
  return "optional";
}

std::string to_json_text()
{
  nlohmann::ordered_json doc;
  doc["format"] = "vista-results";
  doc["version"] = 1;
  doc["geo_axis_order_default"] = "lat_lon";
  doc["meters_per_degree_latitude"] =
    "WGS84 meridional arc at the local-frame origin latitude";
  doc["no_contact_sentinel"] = "inf";
  auto & cols = doc["columns"];
  cols = nlohmann::ordered_json::array();
  for (const auto & c : kColumns) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["group"] = to_string(c.group);
    entry["unit"] = c.unit;
    entry["type"] = c.type;
    entry["presence"] = to_string(c.presence);
    entry["nullable"] = c.nullable;
    entry["perceived"] = c.perceived;
    entry["description"] = c.description;
    cols.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace vista::schema
