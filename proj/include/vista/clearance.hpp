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

#ifndef VISTA__CLEARANCE_HPP_
#define VISTA__CLEARANCE_HPP_

#include "vista/findings.hpp"
#include "vista/model.hpp"
#include "vista/polygon.hpp"
#include "vista/vec2.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vista::clearance
{

inline constexpr double kHorizonSeconds = 30.0;

/// Buffer around the footprint's bounding box. All extents >= 0.
struct ExclusionZone
{
  double lateral_extent{0.0};
  double front_extent{0.0};
  double rear_extent{0.0};
};

/// Footprint bounding box dilated by the zone extents.
Polygon zone_polygon(const ExclusionZone & zone, const Polygon & vut_poly);

struct Incursion
{
  bool inside{false};
  double depth{0.0};
};

/// Throws Error{degenerate_polygon | invalid_argument}.
Incursion zone_incursion(
  const ExclusionZone & zone, const Polygon & vut_poly, const Polygon & entity_poly);

/// Constant-velocity extrapolation of both bodies; +inf when they do not
/// touch within the horizon.
double nearest_temporal_distance(
  const Polygon & vut_poly, Vec2 vut_velocity, const Polygon & entity_poly, Vec2 entity_velocity,
  double horizon = kHorizonSeconds);

struct ClearanceSample
{
  std::int64_t step{};
  double time{};
  std::string entity_id;
  double lateral{};
  double longitudinal{};
  double euclidean_min{};
  double ntd{};
  bool zone_incursion{false};
  double zone_depth{0.0};
  /// Entity centroid lies in front of the VUT geometric centre.
  bool ahead{false};
  /// Velocity components along the centre-to-centre line, positive closing.
  double vut_closing{0.0};
  double entity_closing{0.0};
};

enum class EntityKind : std::uint8_t { actor, obstacle };

struct ClearanceSeries
{
  std::string entity_id;
  EntityKind kind{EntityKind::actor};
  std::vector<ClearanceSample> samples;
  std::vector<Finding> findings;
};

struct SeriesOptions
{
  ExclusionZone zone{};
  double horizon{kHorizonSeconds};
};

/// Planar footprint of the VUT in VCS (geometric centre at the origin).
Polygon vut_polygon(const VehicleProfile & profile);

/// Default outline used when an actor carries no bounding box.
struct Dimensions
{
  double length{};
  double width{};
};
Dimensions default_dimensions(const ActorType & type);

/// One sample per record of the entity whose step the VUT also logged.
/// Throws Error{unknown_entity} when the id names neither an actor nor an
/// obstacle.
ClearanceSeries clearance_series(
  const Trace & trace, const std::string & entity_id, const VehicleProfile & profile,
  const SeriesOptions & options = {});

}  // namespace vista::clearance

#endif  // VISTA__CLEARANCE_HPP_
