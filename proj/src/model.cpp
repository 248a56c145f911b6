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

#include "vista/model.hpp"

#include "vista/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

namespace vista
{

Frame frame_of(const EntityPosition & pos)
{
  return std::holds_alternative<GeoPosition>(pos) ? Frame::wgs84 : Frame::vcs;
}

bool is_valid(const GeoPosition & pos)
{
  return std::isfinite(pos.lat) && std::isfinite(pos.lon) && pos.lat >= -90.0 &&
         pos.lat <= 90.0 && pos.lon >= -180.0 && pos.lon <= 180.0 &&
         (!pos.elev || std::isfinite(*pos.elev));
}

bool is_valid(const VcsPosition & pos)
{
  return std::isfinite(pos.x) && std::isfinite(pos.y) && (!pos.z || std::isfinite(*pos.z));
}

double HeadingDeg::normalize(double degrees)
{
  double wrapped = std::fmod(degrees, 360.0);
  if (wrapped < 0.0) {
    wrapped += 360.0;
  }
  // fmod of a tiny negative value can round up to exactly 360
  if (wrapped >= 360.0) {
    wrapped = 0.0;
  }
  return wrapped;
}

double HeadingDeg::radians() const noexcept
{
  return value_ * std::numbers::pi / 180.0;
}

double heading_difference(HeadingDeg a, HeadingDeg b)
{
  double diff = a.value() - b.value();
  if (diff > 180.0) {
    diff -= 360.0;
  } else if (diff <= -180.0) {
    diff += 360.0;
  }
  return diff;
}

namespace
{

template <typename Kind, std::size_t N>
Tagged<Kind> parse_tagged(
  std::string_view text, const std::array<std::pair<std::string_view, Kind>, N> & names)
{
  for (const auto & [name, kind] : names) {
    if (text == name) {
      return Tagged<Kind>{kind, {}};
    }
  }
  return Tagged<Kind>{Kind::extension, std::string(text)};
}

template <typename Kind, std::size_t N>
std::string tagged_name(
  const Tagged<Kind> & value, const std::array<std::pair<std::string_view, Kind>, N> & names)
{
  if (value.is_extension()) {
    return value.extension;
  }
  for (const auto & [name, kind] : names) {
    if (kind == value.kind) {
      return std::string(name);
    }
  }
  return {};
}

constexpr std::array<std::pair<std::string_view, DriveMode>, 3> kDriveNames{{
  {"autonomous", DriveMode::autonomous},
  {"manual", DriveMode::manual},
  {"teleoperation", DriveMode::teleoperation},
}};

constexpr std::array<std::pair<std::string_view, SpecialOpMode>, 2> kSpecialOpNames{{
  {"normal", SpecialOpMode::normal},
  {"environmental_service", SpecialOpMode::environmental_service},
}};

constexpr std::array<std::pair<std::string_view, PhaseKind>, 3> kPhaseNames{{
  {"go", PhaseKind::go},
  {"stop", PhaseKind::stop},
  {"go_exclusive", PhaseKind::go_exclusive},
}};

constexpr std::array<std::pair<std::string_view, ActorKind>, 4> kActorNames{{
  {"tsv", ActorKind::tsv},
  {"vru_pedestrian", ActorKind::vru_pedestrian},
  {"vru_cyclist", ActorKind::vru_cyclist},
  {"vru_pmd", ActorKind::vru_pmd},
}};

constexpr std::array<std::pair<std::string_view, int>, 10> kObstacleNames{{
  {"construction_cones", 100},
  {"carton", 101},
  {"fallen_tree_branch", 102},
  {"debris", 103},
  {"lamppost", 200},
  {"signpost", 201},
  {"pillar", 202},
  {"tree", 203},
  {"traffic_light_controller_box", 204},
  {"kerb", 205},
}};

}  // namespace

DriveStatus parse_drive_status(std::string_view text) { return parse_tagged(text, kDriveNames); }
SpecialOp parse_special_op(std::string_view text) { return parse_tagged(text, kSpecialOpNames); }
TrafficPhase parse_phase(std::string_view text) { return parse_tagged(text, kPhaseNames); }
ActorType parse_actor_type(std::string_view text) { return parse_tagged(text, kActorNames); }

std::string to_string(const DriveStatus & value) { return tagged_name(value, kDriveNames); }
std::string to_string(const SpecialOp & value) { return tagged_name(value, kSpecialOpNames); }
std::string to_string(const TrafficPhase & value) { return tagged_name(value, kPhaseNames); }
std::string to_string(const ActorType & value) { return tagged_name(value, kActorNames); }

bool is_obstacle_code(int code) { return code >= 100 && code <= 299; }
bool is_fixed_infrastructure(int code) { return code >= 200 && code <= 299; }

std::optional<int> obstacle_code_from_name(std::string_view name)
{
  for (const auto & [known, code] : kObstacleNames) {
    if (known == name) {
      return code;
    }
  }
  int code = 0;
  const auto * end = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(name.data(), end, code);
  if (ec == std::errc{} && ptr == end) {
    return code;
  }
  return std::nullopt;
}

std::optional<int> actor_type_obstacle_code(const ActorType & type)
{
  if (!type.is_extension()) {
    return std::nullopt;
  }
  auto code = obstacle_code_from_name(type.extension);
  if (code && is_obstacle_code(*code)) {
    return code;
  }
  return std::nullopt;
}

Frame BoundingShape::frame() const
{
  return std::holds_alternative<std::vector<GeoPosition>>(vertices) ? Frame::wgs84 : Frame::vcs;
}

std::size_t BoundingShape::size() const
{
  return std::visit([](const auto & v) { return v.size(); }, vertices);
}

namespace
{

template <typename Position>
BoundingShape make_open_shape(std::vector<Position> vertices)
{
  if (vertices.size() > 1 && vertices.front() == vertices.back()) {
    vertices.pop_back();
  }
  return BoundingShape{std::move(vertices)};
}

}  // namespace

BoundingShape make_shape(std::vector<GeoPosition> vertices)
{
  return make_open_shape(std::move(vertices));
}

BoundingShape make_shape(std::vector<VcsPosition> vertices)
{
  return make_open_shape(std::move(vertices));
}

double median_period(const std::vector<VutState> & vut)
{
  if (vut.size() < 2) {
    return 0.0;
  }
  std::vector<double> periods;
  periods.reserve(vut.size() - 1);
  for (std::size_t i = 1; i < vut.size(); ++i) {
    periods.push_back(vut[i].time - vut[i - 1].time);
  }
  const auto mid = periods.begin() + static_cast<std::ptrdiff_t>(periods.size() / 2);
  std::nth_element(periods.begin(), mid, periods.end());
  if (periods.size() % 2 == 1) {
    return *mid;
  }
  const double upper = *mid;
  const double lower = *std::max_element(periods.begin(), mid);
  return 0.5 * (lower + upper);
}

double nominal_rate(const std::vector<VutState> & vut)
{
  // Rounded to 1 uHz so that timestamp round-off does not leak into the rate.
  const double period = median_period(vut);
  return period > 0.0 ? std::round(1e6 / period) * 1e-6 : 0.0;
}

void normalize_obstacle_actors(Trace & trace)
{
  for (auto it = trace.actors.begin(); it != trace.actors.end();) {
    const auto & records = it->second;
    bool convertible = !records.empty() && !trace.obstacles.count(it->first);
    std::optional<int> code;
    for (const auto & rec : records) {
      const auto rec_code = actor_type_obstacle_code(rec.type);
      const bool still = rec.speed == 0.0 && rec.vel_lat == 0.0 && rec.vel_long == 0.0 &&
                         rec.acc_lat == 0.0 && rec.acc_long == 0.0;
      if (!rec_code || (code && *code != *rec_code) || !still || !rec.bbox_true) {
        convertible = false;
        break;
      }
      code = rec_code;
    }
    if (!convertible) {
      ++it;
      continue;
    }
    std::vector<ObstacleState> obstacles;
    obstacles.reserve(records.size());
    for (const auto & rec : records) {
      ObstacleState obs;
      obs.id = rec.id;
      obs.time = rec.time;
      obs.step = rec.step;
      obs.type = ObstacleType{*code};
      obs.pos = rec.pos;
      obs.poly_true = *rec.bbox_true;
      obs.poly_perceived = rec.bbox_perceived;
      obs.ntd = rec.ttc;
      obstacles.push_back(std::move(obs));
    }
    trace.obstacles.emplace(it->first, std::move(obstacles));
    it = trace.actors.erase(it);
  }
}

std::string_view to_string(VehicleClass value)
{
  switch (value) {
    case VehicleClass::class3: return "class3";
    case VehicleClass::class4: return "class4";
    case VehicleClass::aesv_class3: return "aesv_class3";
    case VehicleClass::aesv_class4: return "aesv_class4";
  }
  return "class3";
}

std::optional<VehicleClass> parse_vehicle_class(std::string_view text)
{
  for (auto cls : {VehicleClass::class3, VehicleClass::class4, VehicleClass::aesv_class3,
                   VehicleClass::aesv_class4}) {
    if (to_string(cls) == text) {
      return cls;
    }
  }
  return std::nullopt;
}

VehicleProfile VehicleProfile::rectangle(VehicleClass vehicle_class, double length, double width)
{
  if (!(length > 0.0) || !(width > 0.0)) {
    throw Error(Errc::invalid_argument, "vehicle dimensions must be positive");
  }
  VehicleProfile profile;
  profile.vehicle_class = vehicle_class;
  profile.length = length;
  profile.width = width;
  const double hx = 0.5 * length;
  const double hy = 0.5 * width;
  profile.footprint = {{hx, -hy, {}}, {hx, hy, {}}, {-hx, hy, {}}, {-hx, -hy, {}}};
  return profile;
}

VehicleProfile VehicleProfile::for_class(VehicleClass vehicle_class)
{
  // Outer bounds only; figure-derived defaults, override per test case.
  switch (vehicle_class) {
    case VehicleClass::class3: return rectangle(vehicle_class, 4.4, 1.8);
    case VehicleClass::class4: return rectangle(vehicle_class, 12.0, 2.55);
    case VehicleClass::aesv_class3: return rectangle(vehicle_class, 5.0, 2.0);
    case VehicleClass::aesv_class4: return rectangle(vehicle_class, 7.5, 2.5);
  }
  return rectangle(VehicleClass::class3, 4.4, 1.8);
}

bool footprint_contains_origin(const VehicleProfile & profile)
{
  const auto & poly = profile.footprint;
  if (poly.size() < 3) {
    return false;
  }
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto & a = poly[i];
    const auto & b = poly[j];
    if ((a.y > 0.0) != (b.y > 0.0)) {
      const double x_cross = a.x + (0.0 - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x_cross > 0.0) {
        inside = !inside;
      }
    }
  }
  return inside;
}

}  // namespace vista
