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

#include "vista/geo.hpp"

#include "vista/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vista::geo
{

namespace
{

constexpr double kDegToRad = std::numbers::pi / 180.0;

double wrap_lon_delta(double delta)
{
  if (delta > 180.0) {
    return delta - 360.0;
  }
  if (delta < -180.0) {
    return delta + 360.0;
  }
  return delta;
}

double wrap_lon(double lon)
{
  if (lon > 180.0) {
    return lon - 360.0;
  }
  if (lon < -180.0) {
    return lon + 360.0;
  }
  return lon;
}

}  // namespace

double meters_per_degree_latitude(double lat_deg)
{
  const double phi = lat_deg * kDegToRad;
  return 111132.954 - 559.822 * std::cos(2.0 * phi) + 1.175 * std::cos(4.0 * phi);
}

LocalFrame::LocalFrame(const GeoPosition & origin)
: origin_(origin),
  k_lat_(meters_per_degree_latitude(origin.lat)),
  k_lon_(k_lat_ * std::cos(origin.lat * kDegToRad))
{
  if (!is_valid(origin)) {
    throw Error(Errc::invalid_argument, "local frame origin is not a valid WGS84 position");
  }
}

Vec2 LocalFrame::to_local(const GeoPosition & p) const
{
  const Vec2 out{
    wrap_lon_delta(p.lon - origin_.lon) * k_lon_, (p.lat - origin_.lat) * k_lat_};
  if (!(norm(out) <= kMaxExtentMeters)) {
    throw Error(
      Errc::extent_exceeded,
      "point is " + std::to_string(norm(out)) + " m from the local frame origin");
  }
  return out;
}

GeoPosition LocalFrame::from_local(Vec2 east_north, std::optional<double> elev) const
{
  if (!(norm(east_north) <= kMaxExtentMeters)) {
    throw Error(Errc::extent_exceeded, "offset exceeds the local frame extent");
  }
  GeoPosition out;
  out.lat = origin_.lat + east_north.y / k_lat_;
  out.lon = wrap_lon(origin_.lon + east_north.x / k_lon_);
  out.elev = elev;
  return out;
}

Vec2 local_to_vcs(Vec2 en, HeadingDeg heading)
{
  const double s = std::sin(heading.radians());
  const double c = std::cos(heading.radians());
  return {en.x * s + en.y * c, en.x * c - en.y * s};
}

Vec2 vcs_to_local(Vec2 xy, HeadingDeg heading)
{
  const double s = std::sin(heading.radians());
  const double c = std::cos(heading.radians());
  return {xy.x * s + xy.y * c, xy.x * c - xy.y * s};
}

VcsPosition world_to_vcs(const GeoPosition & vut_pos, HeadingDeg vut_heading, const GeoPosition & p)
{
  const LocalFrame frame(vut_pos);
  const Vec2 xy = local_to_vcs(frame.to_local(p), vut_heading);
  return VcsPosition{xy.x, xy.y, p.elev};
}

GeoPosition vcs_to_world(const GeoPosition & vut_pos, HeadingDeg vut_heading, const VcsPosition & v)
{
  const LocalFrame frame(vut_pos);
  return frame.from_local(vcs_to_local({v.x, v.y}, vut_heading), v.z);
}

HeadingDeg heading_between(const GeoPosition & a, const GeoPosition & b)
{
  const LocalFrame frame(a);
  const Vec2 en = frame.to_local(b);
  if (en.x == 0.0 && en.y == 0.0) {
    throw Error(Errc::coincident_points, "bearing between coincident points is undefined");
  }
  return HeadingDeg(std::atan2(en.x, en.y) / kDegToRad);
}

Vec2 heading_vector(HeadingDeg heading)
{
  return {std::sin(heading.radians()), std::cos(heading.radians())};
}

}  // namespace vista::geo
