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

#include "vista/clearance.hpp"

#include "vista/error.hpp"
#include "vista/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

namespace vista::clearance
{

namespace
{

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Maps world and VCS inputs onto the VCS of one VUT record, whose origin is
// the geometric centre (the logged position is the CoG).
class StepFrame
{
public:
  StepFrame(const VutState & vut, double cog_forward_offset)
  : local_(vut.pos), heading_(vut.heading), offset_(cog_forward_offset)
  {
  }

  Vec2 operator()(const GeoPosition & p) const
  {
    const Vec2 xy = geo::local_to_vcs(local_.to_local(p), heading_);
    return {xy.x + offset_, xy.y};
  }
  Vec2 operator()(const VcsPosition & p) const { return {p.x, p.y}; }

  Vec2 position(const EntityPosition & pos) const
  {
    return std::visit([this](const auto & p) { return (*this)(p); }, pos);
  }

  Polygon polygon(const BoundingShape & shape) const
  {
    Polygon out;
    std::visit(
      [&](const auto & vertices) {
        out.reserve(vertices.size());
        for (const auto & v : vertices) {
          out.push_back((*this)(v));
        }
      },
      shape.vertices);
    return out;
  }

  /// Clockwise angle from VUT heading to `h`, radians.
  double relative_angle(HeadingDeg h) const
  {
    return heading_difference(h, heading_) * kDegToRad;
  }

private:
  geo::LocalFrame local_;
  HeadingDeg heading_;
  double offset_;
};

Vec2 along(double angle) { return {std::cos(angle), std::sin(angle)}; }
Vec2 rightward(double angle) { return {-std::sin(angle), std::cos(angle)}; }

Polygon oriented_rectangle(Vec2 centre, double angle, Dimensions dims)
{
  const Vec2 f = 0.5 * dims.length * along(angle);
  const Vec2 r = 0.5 * dims.width * rightward(angle);
  return {centre + f - r, centre + f + r, centre - f + r, centre - f - r};
}

Vec2 centroid(const Polygon & poly)
{
  Vec2 sum{};
  for (const auto & p : poly) {
    sum = sum + p;
  }
  return (1.0 / static_cast<double>(poly.size())) * sum;
}

ClearanceSample measure(
  const Polygon & vut_poly, Vec2 vut_velocity, const Polygon & entity_poly, Vec2 entity_velocity,
  const SeriesOptions & options)
{
  ClearanceSample s;
  const auto dc = polygon::directional_clearance(vut_poly, entity_poly);
  s.lateral = dc.lateral;
  s.longitudinal = dc.longitudinal;
  s.euclidean_min = polygon::min_separation(vut_poly, entity_poly);
  s.ntd = nearest_temporal_distance(
    vut_poly, vut_velocity, entity_poly, entity_velocity, options.horizon);
  const auto inc = zone_incursion(options.zone, vut_poly, entity_poly);
  s.zone_incursion = inc.inside;
  s.zone_depth = inc.depth;

  const Vec2 c = centroid(entity_poly) - centroid(vut_poly);
  s.ahead = c.x > 0.0;
  const double len = norm(c);
  if (len > 0.0) {
    const Vec2 u = (1.0 / len) * c;
    s.vut_closing = dot(vut_velocity, u);
    s.entity_closing = -dot(entity_velocity, u);
  }
  return s;
}

}  // namespace

Polygon zone_polygon(const ExclusionZone & zone, const Polygon & vut_poly)
{
  if (!(zone.lateral_extent >= 0.0) || !(zone.front_extent >= 0.0) || !(zone.rear_extent >= 0.0)) {
    throw Error(Errc::invalid_argument, "exclusion zone extents must be non-negative");
  }
  polygon::require_valid(vut_poly);
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto & p : vut_poly) {
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  x_lo -= zone.rear_extent;
  x_hi += zone.front_extent;
  y_lo -= zone.lateral_extent;
  y_hi += zone.lateral_extent;
  return {{x_hi, y_lo}, {x_hi, y_hi}, {x_lo, y_hi}, {x_lo, y_lo}};
}

Incursion zone_incursion(
  const ExclusionZone & zone, const Polygon & vut_poly, const Polygon & entity_poly)
{
  polygon::require_valid(entity_poly);
  const Polygon z = zone_polygon(zone, vut_poly);
  if (!polygon::intersects(z, entity_poly)) {
    return {};
  }
  return {true, polygon::penetration_depth(z, entity_poly)};
}

double nearest_temporal_distance(
  const Polygon & vut_poly, Vec2 vut_velocity, const Polygon & entity_poly, Vec2 entity_velocity,
  double horizon)
{
  return polygon::time_to_contact(entity_poly, vut_poly, vut_velocity - entity_velocity, horizon);
}

Polygon vut_polygon(const VehicleProfile & profile)
{
  Polygon out;
  out.reserve(profile.footprint.size());
  for (const auto & v : profile.footprint) {
    out.push_back({v.x, v.y});
  }
  return out;
}

Dimensions default_dimensions(const ActorType & type)
{
  switch (type.kind) {
    case ActorKind::vru_pedestrian: return {0.5, 0.5};
    case ActorKind::vru_cyclist: return {1.8, 0.6};
    case ActorKind::vru_pmd: return {1.2, 0.6};
    case ActorKind::tsv:
    case ActorKind::extension: return {4.4, 1.8};
  }
  return {4.4, 1.8};
}

ClearanceSeries clearance_series(
  const Trace & trace, const std::string & entity_id, const VehicleProfile & profile,
  const SeriesOptions & options)
{
  const auto actor_it = trace.actors.find(entity_id);
  const auto obstacle_it = trace.obstacles.find(entity_id);
  if (actor_it == trace.actors.end() && obstacle_it == trace.obstacles.end()) {
    throw Error(Errc::unknown_entity, "no actor or obstacle with id '" + entity_id + "'");
  }

  std::unordered_map<std::int64_t, std::size_t> vut_index;
  vut_index.reserve(trace.vut.size());
  for (std::size_t i = 0; i < trace.vut.size(); ++i) {
    vut_index.emplace(trace.vut[i].step, i);
  }
  const Polygon vut_poly = vut_polygon(profile);

  ClearanceSeries series;
  series.entity_id = entity_id;

  auto emit = [&](const VutState & vut, const Polygon & entity_poly, Vec2 entity_velocity) {
    ClearanceSample s = measure(vut_poly, {vut.speed, 0.0}, entity_poly, entity_velocity, options);
    s.step = vut.step;
    s.time = vut.time;
    s.entity_id = entity_id;
    series.samples.push_back(std::move(s));
  };

  if (actor_it != trace.actors.end()) {
    series.kind = EntityKind::actor;
    bool flagged = false;
    for (const auto & rec : actor_it->second) {
      const auto vi = vut_index.find(rec.step);
      if (vi == vut_index.end()) {
        continue;
      }
      const VutState & vut = trace.vut[vi->second];
      const StepFrame frame(vut, profile.cog_forward_offset);
      const double angle = rec.heading ? frame.relative_angle(*rec.heading) : 0.0;
      Polygon poly;
      if (rec.bbox_true) {
        poly = frame.polygon(*rec.bbox_true);
      } else {
        poly = oriented_rectangle(frame.position(rec.pos), angle, default_dimensions(rec.type));
        if (!flagged) {
          flagged = true;
          series.findings.push_back(make_finding(
            Severity::warning, FindingCode::default_footprint,
            "actor '" + entity_id + "' has no bounding box; default outline for type '" +
              to_string(rec.type) + "' substituted"));
        }
      }
      const Vec2 velocity =
        rec.heading ? rec.vel_long * along(angle) + rec.vel_lat * rightward(angle) : Vec2{};
      emit(vut, poly, velocity);
    }
  } else {
    series.kind = EntityKind::obstacle;
    for (const auto & rec : obstacle_it->second) {
      const auto vi = vut_index.find(rec.step);
      if (vi == vut_index.end()) {
        continue;
      }
      const VutState & vut = trace.vut[vi->second];
      const StepFrame frame(vut, profile.cog_forward_offset);
      emit(vut, frame.polygon(rec.poly_true), Vec2{});
    }
  }
  return series;
}

}  // namespace vista::clearance
