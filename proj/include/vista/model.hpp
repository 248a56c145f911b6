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

#ifndef VISTA__MODEL_HPP_
#define VISTA__MODEL_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vista
{

inline constexpr double kNoContact = std::numeric_limits<double>::infinity();

/// WGS84 world position. Elevation is relative to a common reference plane.
struct GeoPosition
{
  double lat{};
  double lon{};
  std::optional<double> elev{};

  bool operator==(const GeoPosition &) const = default;
};

/// Position in the vehicle coordinate system of the VUT (SAE J670, Z down):
/// origin at the geometric centre, +x forward, +y right.
struct VcsPosition
{
  double x{};
  double y{};
  std::optional<double> z{};

  bool operator==(const VcsPosition &) const = default;
};

enum class Frame : std::uint8_t { wgs84, vcs };

using EntityPosition = std::variant<GeoPosition, VcsPosition>;

Frame frame_of(const EntityPosition & pos);
bool is_valid(const GeoPosition & pos);
bool is_valid(const VcsPosition & pos);

/// Heading in degrees, 0 = geographic North, clockwise positive, kept in [0, 360).
class HeadingDeg
{
public:
  HeadingDeg() = default;
  explicit HeadingDeg(double degrees) : value_(normalize(degrees)) {}

  double value() const noexcept { return value_; }
  double radians() const noexcept;

  static double normalize(double degrees);

  bool operator==(const HeadingDeg &) const = default;

private:
  double value_{0.0};
};

/// Smallest signed difference a - b in degrees, in (-180, 180].
double heading_difference(HeadingDeg a, HeadingDeg b);

// Enumerations that tolerate applicant-defined extensions keep the raw tag.
template <typename Kind>
struct Tagged
{
  Kind kind{};
  std::string extension{};

  bool is_extension() const { return kind == Kind::extension; }
  bool operator==(const Tagged &) const = default;
};

enum class DriveMode : std::uint8_t { autonomous, manual, teleoperation, extension };
enum class SpecialOpMode : std::uint8_t { normal, environmental_service, extension };
enum class PhaseKind : std::uint8_t { go, stop, go_exclusive, extension };
enum class ActorKind : std::uint8_t { tsv, vru_pedestrian, vru_cyclist, vru_pmd, extension };

using DriveStatus = Tagged<DriveMode>;
using SpecialOp = Tagged<SpecialOpMode>;
using TrafficPhase = Tagged<PhaseKind>;
using ActorType = Tagged<ActorKind>;

DriveStatus parse_drive_status(std::string_view text);
SpecialOp parse_special_op(std::string_view text);
TrafficPhase parse_phase(std::string_view text);
ActorType parse_actor_type(std::string_view text);

std::string to_string(const DriveStatus & value);
std::string to_string(const SpecialOp & value);
std::string to_string(const TrafficPhase & value);
std::string to_string(const ActorType & value);

/// Integer obstacle type code (e.g. construction_cones = 100).
struct ObstacleType
{
  int code{100};

  bool operator==(const ObstacleType &) const = default;
};

inline constexpr int kConstructionCones = 100;

/// Codes 100-299 are obstacles; 200-299 are fixed infrastructure.
bool is_obstacle_code(int code);
bool is_fixed_infrastructure(int code);
std::optional<int> obstacle_code_from_name(std::string_view name);
std::optional<int> actor_type_obstacle_code(const ActorType & type);

/// Polygon vertices, stored open (no repeated closing vertex).
struct BoundingShape
{
  std::variant<std::vector<GeoPosition>, std::vector<VcsPosition>> vertices;

  Frame frame() const;
  std::size_t size() const;

  bool operator==(const BoundingShape &) const = default;
};

/// Drops a trailing vertex equal to the first one.
BoundingShape make_shape(std::vector<GeoPosition> vertices);
BoundingShape make_shape(std::vector<VcsPosition> vertices);

struct IndicatorSet
{
  bool left_front{false};
  bool left_rear{false};
  bool right_front{false};
  bool right_rear{false};
  bool brake{false};
  bool reverse{false};
  bool hazard{false};

  bool operator==(const IndicatorSet &) const = default;
};

struct VutState
{
  double time{};
  std::int64_t step{};
  GeoPosition pos{};  // at CoG
  double travelled{};
  double speed{};
  double acc_lat{};
  double acc_long{};
  double yaw_rate{};
  std::optional<double> pitch_rate{};
  std::optional<double> roll_rate{};
  HeadingDeg heading{};
  IndicatorSet indicators{};
  double throttle{};
  double brake{};
  double steering_angle{};
  DriveStatus drive_status{};
  SpecialOp special_op{};

  bool operator==(const VutState &) const = default;
};

struct ActorState
{
  std::string id;
  double time{};
  std::int64_t step{};
  ActorType type{};
  EntityPosition pos{};
  std::optional<BoundingShape> bbox_true{};
  std::optional<BoundingShape> bbox_perceived{};
  double speed{};
  double vel_lat{};
  double vel_long{};
  double acc_lat{};
  double acc_long{};
  std::optional<HeadingDeg> heading{};
  double ttc{kNoContact};

  bool operator==(const ActorState &) const = default;
};

struct ObstacleState
{
  std::string id;
  double time{};
  std::int64_t step{};
  ObstacleType type{};
  EntityPosition pos{};
  BoundingShape poly_true{};
  std::optional<BoundingShape> poly_perceived{};
  double ntd{kNoContact};

  bool operator==(const ObstacleState &) const = default;
};

struct TrafficControllerState
{
  std::string id;
  double time{};
  std::int64_t step{};
  TrafficPhase phase{};
  std::optional<TrafficPhase> phase_perceived{};

  bool operator==(const TrafficControllerState &) const = default;
};

struct Trace
{
  std::string testcase_id;
  int run_id{1};
  std::vector<VutState> vut;
  std::map<std::string, std::vector<ActorState>> actors;
  std::map<std::string, std::vector<ObstacleState>> obstacles;
  std::map<std::string, std::vector<TrafficControllerState>> controllers;
  double declared_frequency{0.0};

  bool operator==(const Trace &) const = default;
};

/// Median inter-sample period of the VUT records, or 0 when fewer than two.
double median_period(const std::vector<VutState> & vut);
/// 1 / median_period rounded to 1e-6 Hz, or 0 when undefined.
double nominal_rate(const std::vector<VutState> & vut);

/// Moves actor records that are stationary obstacles in disguise (obstacle
/// type code, all motion fields exactly zero for the whole run) into the
/// obstacle map.
void normalize_obstacle_actors(Trace & trace);

enum class VehicleClass : std::uint8_t { class3, class4, aesv_class3, aesv_class4 };

std::string_view to_string(VehicleClass value);
std::optional<VehicleClass> parse_vehicle_class(std::string_view text);

/// Outer bounds of the VUT in its own VCS. AESV brushes are not part of the
/// footprint.
struct VehicleProfile
{
  VehicleClass vehicle_class{VehicleClass::class3};
  double length{4.4};
  double width{1.8};
  /// CoG position forward of the geometric centre; trace positions are at CoG.
  double cog_forward_offset{0.0};
  std::vector<VcsPosition> footprint{};

  static VehicleProfile rectangle(VehicleClass vehicle_class, double length, double width);
  static VehicleProfile for_class(VehicleClass vehicle_class);
};

bool footprint_contains_origin(const VehicleProfile & profile);

}  // namespace vista

#endif  // VISTA__MODEL_HPP_
