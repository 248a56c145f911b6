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

#ifndef VISTA__POLYGON_HPP_
#define VISTA__POLYGON_HPP_

#include "vista/vec2.hpp"

#include <limits>
#include <optional>
#include <string>

namespace vista::polygon
{

// Planar polygons are open vertex rings (no repeated closing vertex), in
// either winding order.

double signed_area(const Polygon & poly);
bool is_simple(const Polygon & poly);

/// Reason the polygon is unusable, or nullopt when it has at least three
/// distinct finite vertices, non-zero area and no self-intersections.
std::optional<std::string> degeneracy(const Polygon & poly);

/// Throws Error{degenerate_polygon}.
void require_valid(const Polygon & poly);

/// Boundary points count as inside.
bool contains(const Polygon & poly, Vec2 p);

/// True when the closed regions share at least one point.
bool intersects(const Polygon & a, const Polygon & b);

double point_segment_distance(Vec2 p, Vec2 s0, Vec2 s1);
double segment_distance(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1);

/// Minimum distance between the two regions; 0 when touching, overlapping or
/// nested. Throws Error{degenerate_polygon}.
double min_separation(const Polygon & a, const Polygon & b);

struct DirectionalClearance
{
  double lateral{std::numeric_limits<double>::infinity()};
  double longitudinal{std::numeric_limits<double>::infinity()};
};

/// Gap along y over the shared x-interval (lateral) and along x over the
/// shared y-interval (longitudinal). An axis whose orthogonal projections do
/// not overlap reports +inf. Negative values are interpenetration depth.
DirectionalClearance directional_clearance(const Polygon & a, const Polygon & b);

/// Earliest t in [0, horizon] at which `moving`, translating with `velocity`,
/// touches `fixed`; +inf when it never does.
double time_to_contact(
  const Polygon & fixed, const Polygon & moving, Vec2 velocity, double horizon);

Polygon convex_hull(const Polygon & poly);

/// Separating-axis overlap of the convex hulls: the shortest translation that
/// separates them, 0 when disjoint or touching.
double penetration_depth(const Polygon & a, const Polygon & b);

Polygon translated(const Polygon & poly, Vec2 offset);

}  // namespace vista::polygon

#endif  // VISTA__POLYGON_HPP_
