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

#ifndef VISTA__GEO_HPP_
#define VISTA__GEO_HPP_

#include "vista/model.hpp"
#include "vista/vec2.hpp"

#include <optional>

namespace vista::geo
{

inline constexpr double kMaxExtentMeters = 50'000.0;

/// WGS84 meridional arc length of one degree of latitude at `lat_deg`.
double meters_per_degree_latitude(double lat_deg);

/// Equirectangular tangent plane anchored at an origin. Both axes use the
/// latitude scale K of the origin; east is additionally scaled by cos(lat0).
/// Valid for extents well below kMaxExtentMeters.
class LocalFrame
{
public:
  explicit LocalFrame(const GeoPosition & origin);

  const GeoPosition & origin() const { return origin_; }
  double meters_per_deg_lat() const { return k_lat_; }
  double meters_per_deg_lon() const { return k_lon_; }

  /// (x = east, y = north) in meters. Throws Error{extent_exceeded}.
  Vec2 to_local(const GeoPosition & p) const;
  GeoPosition from_local(Vec2 east_north, std::optional<double> elev = std::nullopt) const;

private:
  GeoPosition origin_;
  double k_lat_;
  double k_lon_;
};

/// Rotates an east/north offset into VCS axes for the given heading.
Vec2 local_to_vcs(Vec2 east_north, HeadingDeg heading);
Vec2 vcs_to_local(Vec2 xy, HeadingDeg heading);

/// `vut_pos` is the VCS origin (the VUT geometric centre).
VcsPosition world_to_vcs(const GeoPosition & vut_pos, HeadingDeg vut_heading, const GeoPosition & p);
GeoPosition vcs_to_world(const GeoPosition & vut_pos, HeadingDeg vut_heading, const VcsPosition & v);

/// Bearing from a to b. Throws Error{coincident_points}.
HeadingDeg heading_between(const GeoPosition & a, const GeoPosition & b);

/// Unit vector (east, north) pointing along a heading.
Vec2 heading_vector(HeadingDeg heading);

}  // namespace vista::geo

#endif  // VISTA__GEO_HPP_
