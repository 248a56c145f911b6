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

// Brute-force geometric oracles. They share no code with the library: each
// answers the question by dense sampling or stepping rather than by exact
// construction, so agreement is evidence for both.

#ifndef VISTA_TESTS__ORACLES_HPP_
#define VISTA_TESTS__ORACLES_HPP_

#include "vista/vec2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace vista::oracle
{

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Crossing-number test; points on the boundary may land either way.
inline bool inside(const Polygon & poly, Vec2 p)
{
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) {
        in = !in;
      }
    }
  }
  return in;
}

inline double point_to_segment(Vec2 p, Vec2 a, Vec2 b)
{
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

/// Boundary points spaced at most `spacing` apart along every edge.
inline std::vector<Vec2> boundary_samples(const Polygon & poly, double spacing)
{
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / n;
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

inline double distance_to_boundary(Vec2 p, const Polygon & poly)
{
  double best = kInf;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_to_segment(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

/// Minimum distance between two polygon regions by boundary sampling.
inline double sampled_separation(const Polygon & a, const Polygon & b, double spacing = 1e-3)
{
  double best = kInf;
  for (const auto & [from, to] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    for (const Vec2 p : boundary_samples(*from, spacing)) {
      if (inside(*to, p)) {
        return 0.0;
      }
      best = std::min(best, distance_to_boundary(p, *to));
    }
  }
  return best;
}

struct Span
{
  double lo;
  double hi;
};

/// Extent of the polygon along `v` on the line `u = const`; the `along_x`
/// flag selects u = x (cross-section in y) or u = y (cross-section in x).
inline std::optional<Span> cross_section(const Polygon & poly, double u, bool along_x)
{
  auto uc = [&](Vec2 p) { return along_x ? p.x : p.y; };
  auto vc = [&](Vec2 p) { return along_x ? p.y : p.x; };
  std::optional<Span> out;
  auto add = [&](double v) {
    if (!out) {
      out = Span{v, v};
    } else {
      out->lo = std::min(out->lo, v);
      out->hi = std::max(out->hi, v);
    }
  };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % poly.size()];
    const double pu = uc(p);
    const double qu = uc(q);
    if (u < std::min(pu, qu) || u > std::max(pu, qu)) {
      continue;
    }
    if (pu == qu) {
      add(vc(p));
      add(vc(q));
    } else {
      const double t = (u - pu) / (qu - pu);
      add(vc(p) + t * (vc(q) - vc(p)));
    }
  }
  return out;
}

/// Directional gap by sampling the shared interval on a 1 mm grid, then
/// re-sampling at 1 micrometre around the lowest coarse samples. +inf when
/// the projections do not overlap.
inline double sampled_gap(const Polygon & a, const Polygon & b, bool along_x)
{
  auto range = [&](const Polygon & poly) {
    Span s{kInf, -kInf};
    for (const Vec2 p : poly) {
      const double u = along_x ? p.x : p.y;
      s.lo = std::min(s.lo, u);
      s.hi = std::max(s.hi, u);
    }
    return s;
  };
  const Span ra = range(a);
  const Span rb = range(b);
  const double lo = std::max(ra.lo, rb.lo);
  const double hi = std::min(ra.hi, rb.hi);
  if (!(lo < hi)) {
    return kInf;
  }
  auto gap = [&](double u) {
    const auto sa = cross_section(a, u, along_x);
    const auto sb = cross_section(b, u, along_x);
    if (!sa || !sb) {
      return kInf;
    }
    return std::max(sb->lo - sa->hi, sa->lo - sb->hi);
  };
  constexpr double kCoarse = 1e-3;
  constexpr double kFine = 1e-6;
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / kCoarse)));
  std::vector<std::pair<double, double>> coarse;
  coarse.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double u = std::min(hi, lo + k * kCoarse);
    coarse.emplace_back(gap(u), u);
  }
  const std::size_t keep = std::min<std::size_t>(8, coarse.size());
  std::partial_sort(coarse.begin(), coarse.begin() + static_cast<long>(keep), coarse.end());
  double best = coarse.front().first;
  for (std::size_t i = 0; i < keep; ++i) {
    const double centre = coarse[i].second;
    for (int k = -1000; k <= 1000; ++k) {
      const double u = centre + k * kFine;
      if (u >= lo && u <= hi) {
        best = std::min(best, gap(u));
      }
    }
  }
  return best;
}

inline bool segments_touch(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
{
  auto orient = [](Vec2 a, Vec2 b, Vec2 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); };
  auto on = [](Vec2 a, Vec2 b, Vec2 c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
  };
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return (d1 == 0 && on(q1, q2, p1)) || (d2 == 0 && on(q1, q2, p2)) || (d3 == 0 && on(p1, p2, q1)) ||
         (d4 == 0 && on(p1, p2, q2));
}

inline bool regions_meet(const Polygon & a, const Polygon & b)
{
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_touch(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) {
        return true;
      }
    }
  }
  return inside(a, b.front()) || inside(b, a.front());
}

inline Polygon shifted(const Polygon & poly, Vec2 d)
{
  Polygon out = poly;
  for (auto & p : out) {
    p = p + d;
  }
  return out;
}

/// First contact time found by stepping both bodies at `dt`; +inf when none
/// within the horizon.
inline double stepped_contact_time(
  const Polygon & a, Vec2 va, const Polygon & b, Vec2 vb, double horizon, double dt = 1e-3)
{
  auto circle = [](const Polygon & poly) {
    Vec2 c{};
    for (const Vec2 p : poly) {
      c = c + p;
    }
    c = (1.0 / static_cast<double>(poly.size())) * c;
    double r = 0.0;
    for (const Vec2 p : poly) {
      r = std::max(r, norm(p - c));
    }
    return std::pair{c, r};
  };
  const auto [ca, ra] = circle(a);
  const auto [cb, rb] = circle(b);
  const auto steps = static_cast<long>(std::floor(horizon / dt + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Vec2 da = t * va;
    const Vec2 db = t * vb;
    if (norm((cb + db) - (ca + da)) > ra + rb) {
      continue;
    }
    if (regions_meet(shifted(a, da), shifted(b, db))) {
      return t;
    }
  }
  return kInf;
}

}  // namespace vista::oracle

#endif  // VISTA_TESTS__ORACLES_HPP_
