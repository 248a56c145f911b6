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

#include "vista/polygon.hpp"

#include "vista/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vista::polygon
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

bool within_box(Vec2 a, Vec2 b, Vec2 p)
{
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
         p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_intersect(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1)
{
  const int d1 = sign(orient(q0, q1, p0));
  const int d2 = sign(orient(q0, q1, p1));
  const int d3 = sign(orient(p0, p1, q0));
  const int d4 = sign(orient(p0, p1, q1));
  if (d1 * d2 < 0 && d3 * d4 < 0) {
    return true;
  }
  return (d1 == 0 && within_box(q0, q1, p0)) || (d2 == 0 && within_box(q0, q1, p1)) ||
         (d3 == 0 && within_box(p0, p1, q0)) || (d4 == 0 && within_box(p0, p1, q1));
}

struct Extent
{
  double lo{kInf};
  double hi{-kInf};
};

// Extent along `v` of the polygon's cross-section at u = `at`, where (u, v)
// are the coordinates picked by `u_of`/`v_of`.
template <typename U, typename V>
Extent cross_section(const Polygon & poly, double at, U u_of, V v_of)
{
  Extent e;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double pu = u_of(p);
    const double qu = u_of(q);
    if (at < std::min(pu, qu) || at > std::max(pu, qu)) {
      continue;
    }
    if (pu == qu) {
      e.lo = std::min({e.lo, v_of(p), v_of(q)});
      e.hi = std::max({e.hi, v_of(p), v_of(q)});
      continue;
    }
    const double t = (at - pu) / (qu - pu);
    const double v = v_of(p) + t * (v_of(q) - v_of(p));
    e.lo = std::min(e.lo, v);
    e.hi = std::max(e.hi, v);
  }
  return e;
}

// Extent along `v` at u = `at` over the non-vertical edges whose u-span
// covers [u0, u1]: the linear extension of the section inside that interval.
template <typename U, typename V>
Extent spanning_section(const Polygon & poly, double at, double u0, double u1, U u_of, V v_of)
{
  Extent e;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double pu = u_of(p);
    const double qu = u_of(q);
    if (pu == qu || std::min(pu, qu) > u0 || std::max(pu, qu) < u1) {
      continue;
    }
    const double t = (at - pu) / (qu - pu);
    const double v = v_of(p) + t * (v_of(q) - v_of(p));
    e.lo = std::min(e.lo, v);
    e.hi = std::max(e.hi, v);
  }
  return e;
}

template <typename U, typename V>
double axis_gap(const Polygon & a, const Polygon & b, U u_of, V v_of)
{
  double a_min = kInf, a_max = -kInf, b_min = kInf, b_max = -kInf;
  for (const auto & p : a) {
    a_min = std::min(a_min, u_of(p));
    a_max = std::max(a_max, u_of(p));
  }
  for (const auto & p : b) {
    b_min = std::min(b_min, u_of(p));
    b_max = std::max(b_max, u_of(p));
  }
  const double lo = std::max(a_min, b_min);
  const double hi = std::min(a_max, b_max);
  if (!(lo < hi)) {
    return kInf;
  }

  std::vector<double> breaks{lo, hi};
  for (const auto * poly : {&a, &b}) {
    for (const auto & p : *poly) {
      const double u = u_of(p);
      if (u > lo && u < hi) {
        breaks.push_back(u);
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // gap(u) = max(b_lo - a_hi, a_lo - b_hi). Inside each open interval between
  // breakpoints the extents come from a fixed set of edges, so both terms are
  // linear there and the infimum sits at an interval end or where the terms
  // cross. Extents may jump at a breakpoint, so interval ends use only the
  // edges spanning the whole interval and breakpoints are scored separately.
  auto terms = [&](double at, double u0, double u1) {
    const Extent ea = spanning_section(a, at, u0, u1, u_of, v_of);
    const Extent eb = spanning_section(b, at, u0, u1, u_of, v_of);
    return std::pair{eb.lo - ea.hi, ea.lo - eb.hi};
  };
  double best = kInf;
  for (const double u : breaks) {
    const Extent ea = cross_section(a, u, u_of, v_of);
    const Extent eb = cross_section(b, u, u_of, v_of);
    best = std::min(best, std::max(eb.lo - ea.hi, ea.lo - eb.hi));
  }
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    const double u0 = breaks[i - 1];
    const double u1 = breaks[i];
    const auto left = terms(u0, u0, u1);
    const auto right = terms(u1, u0, u1);
    best = std::min({best, std::max(left.first, left.second), std::max(right.first, right.second)});
    const double d0 = left.first - left.second;
    const double d1 = right.first - right.second;
    if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
      const double u = u0 + d0 / (d0 - d1) * (u1 - u0);
      const auto mid = terms(u, u0, u1);
      best = std::min(best, std::max(mid.first, mid.second));
    }
  }
  return best;
}

// Earliest t >= 0 with p + t * v on segment [s0, s1].
double ray_segment_time(Vec2 p, Vec2 v, Vec2 s0, Vec2 s1)
{
  const Vec2 d = s1 - s0;
  const double denom = cross(v, d);
  const Vec2 w = s0 - p;
  if (denom == 0.0) {
    if (cross(w, v) != 0.0) {
      return kInf;
    }
    // Collinear: the ray meets the nearer endpoint first (or starts on it).
    const double vv = dot(v, v);
    if (vv == 0.0) {
      return kInf;
    }
    const double t0 = dot(s0 - p, v) / vv;
    const double t1 = dot(s1 - p, v) / vv;
    if (t0 <= 0.0 && t1 >= 0.0) {
      return 0.0;
    }
    if (t1 <= 0.0 && t0 >= 0.0) {
      return 0.0;
    }
    const double t = std::min(t0, t1);
    return t >= 0.0 ? t : kInf;
  }
  const double t = cross(w, d) / denom;
  const double s = cross(w, v) / denom;
  if (t < 0.0 || s < 0.0 || s > 1.0) {
    return kInf;
  }
  return t;
}

}  // namespace

double signed_area(const Polygon & poly)
{
  double sum = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * sum;
}

bool is_simple(const Polygon & poly)
{
  const std::size_t n = poly.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a0 = poly[i];
    const Vec2 a1 = poly[(i + 1) % n];
    // Adjacent edge folding back onto this one.
    const Vec2 a2 = poly[(i + 2) % n];
    if (orient(a0, a1, a2) == 0.0 && dot(a0 - a1, a2 - a1) > 0.0) {
      return false;
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) {
        continue;
      }
      if (segments_intersect(a0, a1, poly[j], poly[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

std::optional<std::string> degeneracy(const Polygon & poly)
{
  if (poly.size() < 3) {
    return "fewer than 3 vertices";
  }
  for (const auto & p : poly) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      return "non-finite vertex";
    }
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] == poly[(i + 1) % poly.size()]) {
      return "repeated consecutive vertex";
    }
  }
  if (std::abs(signed_area(poly)) <= 1e-12) {
    return "zero area";
  }
  if (!is_simple(poly)) {
    return "self-intersecting";
  }
  return std::nullopt;
}

void require_valid(const Polygon & poly)
{
  if (auto why = degeneracy(poly)) {
    throw Error(Errc::degenerate_polygon, *why);
  }
}

bool contains(const Polygon & poly, Vec2 p)
{
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if (orient(a, b, p) == 0.0 && within_box(a, b, p)) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

bool intersects(const Polygon & a, const Polygon & b)
{
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (segments_intersect(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb])) {
        return true;
      }
    }
  }
  return contains(a, b.front()) || contains(b, a.front());
}

double point_segment_distance(Vec2 p, Vec2 s0, Vec2 s1)
{
  const Vec2 d = s1 - s0;
  const double len2 = dot(d, d);
  if (len2 == 0.0) {
    return norm(p - s0);
  }
  const double t = std::clamp(dot(p - s0, d) / len2, 0.0, 1.0);
  return norm(p - (s0 + t * d));
}

double segment_distance(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1)
{
  if (segments_intersect(p0, p1, q0, q1)) {
    return 0.0;
  }
  return std::min(
    {point_segment_distance(p0, q0, q1), point_segment_distance(p1, q0, q1),
     point_segment_distance(q0, p0, p1), point_segment_distance(q1, p0, p1)});
}

double min_separation(const Polygon & a, const Polygon & b)
{
  require_valid(a);
  require_valid(b);
  if (intersects(a, b)) {
    return 0.0;
  }
  double best = kInf;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(
        best, segment_distance(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()]));
    }
  }
  return best;
}

DirectionalClearance directional_clearance(const Polygon & a, const Polygon & b)
{
  require_valid(a);
  require_valid(b);
  auto x_of = [](Vec2 p) { return p.x; };
  auto y_of = [](Vec2 p) { return p.y; };
  return DirectionalClearance{axis_gap(a, b, x_of, y_of), axis_gap(a, b, y_of, x_of)};
}

double time_to_contact(const Polygon & fixed, const Polygon & moving, Vec2 velocity, double horizon)
{
  require_valid(fixed);
  require_valid(moving);
  if (intersects(fixed, moving)) {
    return 0.0;
  }
  if (velocity.x == 0.0 && velocity.y == 0.0) {
    return kInf;
  }
  // First contact always puts a vertex of one polygon on an edge of the other.
  double best = kInf;
  for (const auto & p : moving) {
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      best = std::min(best, ray_segment_time(p, velocity, fixed[i], fixed[(i + 1) % fixed.size()]));
    }
  }
  for (const auto & q : fixed) {
    for (std::size_t i = 0; i < moving.size(); ++i) {
      best = std::min(
        best, ray_segment_time(q, -velocity, moving[i], moving[(i + 1) % moving.size()]));
    }
  }
  return best <= horizon ? best : kInf;
}

Polygon convex_hull(const Polygon & poly)
{
  Polygon pts = poly;
  std::sort(pts.begin(), pts.end(), [](Vec2 l, Vec2 r) {
    return l.x < r.x || (l.x == r.x && l.y < r.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    return pts;
  }
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto & p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0.0) {
      --k;
    }
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2 p = pts[i];
    while (k >= lower && orient(hull[k - 2], hull[k - 1], p) <= 0.0) {
      --k;
    }
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

double penetration_depth(const Polygon & a, const Polygon & b)
{
  const Polygon ha = convex_hull(a);
  const Polygon hb = convex_hull(b);
  double depth = kInf;
  for (const auto * hull : {&ha, &hb}) {
    const std::size_t n = hull->size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 edge = (*hull)[(i + 1) % n] - (*hull)[i];
      const double len = norm(edge);
      if (len == 0.0) {
        continue;
      }
      const Vec2 axis{-edge.y / len, edge.x / len};
      double a_lo = kInf, a_hi = -kInf, b_lo = kInf, b_hi = -kInf;
      for (const auto & p : ha) {
        a_lo = std::min(a_lo, dot(p, axis));
        a_hi = std::max(a_hi, dot(p, axis));
      }
      for (const auto & p : hb) {
        b_lo = std::min(b_lo, dot(p, axis));
        b_hi = std::max(b_hi, dot(p, axis));
      }
      const double overlap = std::min(a_hi - b_lo, b_hi - a_lo);
      if (overlap <= 0.0) {
        return 0.0;
      }
      depth = std::min(depth, overlap);
    }
  }
  return std::isfinite(depth) ? depth : 0.0;
}

Polygon translated(const Polygon & poly, Vec2 offset)
{
  Polygon out;
  out.reserve(poly.size());
  for (const auto & p : poly) {
    out.push_back(p + offset);
  }
  return out;
}

}  // namespace vista::polygon
