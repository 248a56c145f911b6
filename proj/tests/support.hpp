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

// Shared generators and fixtures for the test suites. Generators are
// hand-rolled over std::mt19937_64 so every property run is reproducible
// from its seed.

#ifndef VISTA_TESTS__SUPPORT_HPP_
#define VISTA_TESTS__SUPPORT_HPP_

#include "vista/geo.hpp"
#include "vista/model.hpp"
#include "vista/vec2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace vista::test
{

using Rng = std::mt19937_64;

inline double uniform(Rng & rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng & rng, int lo, int hi)
{
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng & rng, double p = 0.5)
{
  return std::bernoulli_distribution(p)(rng);
}

/// Star-shaped simple polygon around `centre`: one vertex per angular slot,
/// jittered within the slot, so every angular gap stays below pi. Radii lie
/// in [0.4, 1] of `radius`.
inline Polygon random_polygon(Rng & rng, Vec2 centre, double radius, int vertices)
{
  const int n = std::max(3, vertices);
  const double slot = 2.0 * std::numbers::pi / n;
  const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  Polygon poly;
  for (int i = 0; i < n; ++i) {
    const double a = phase + slot * (i + uniform(rng, 0.0, 0.45));
    const double r = radius * uniform(rng, 0.4, 1.0);
    poly.push_back({centre.x + r * std::cos(a), centre.y + r * std::sin(a)});
  }
  return poly;
}

inline Polygon rectangle(Vec2 centre, double length_x, double width_y)
{
  const double hx = 0.5 * length_x;
  const double hy = 0.5 * width_y;
  return {
    {centre.x - hx, centre.y - hy},
    {centre.x + hx, centre.y - hy},
    {centre.x + hx, centre.y + hy},
    {centre.x - hx, centre.y + hy}};
}

/// Scratch directory removed on destruction.
class TempDir
{
public:
  explicit TempDir(const std::string & tag)
  {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("vista-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;

  const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
};

inline constexpr GeoPosition kSiteOrigin{1.354088453458461, 103.6957499292194, {}};

/// WGS84 rectangle of the given size around a local-plane centre.
inline BoundingShape geo_box(const geo::LocalFrame & frame, Vec2 centre, double half, Rng & rng)
{
  const double hx = half * uniform(rng, 0.5, 1.0);
  const double hy = half * uniform(rng, 0.5, 1.0);
  return make_shape(std::vector<GeoPosition>{
    frame.from_local({centre.x - hx, centre.y - hy}), frame.from_local({centre.x + hx, centre.y - hy}),
    frame.from_local({centre.x + hx, centre.y + hy}), frame.from_local({centre.x - hx, centre.y + hy})});
}

inline BoundingShape vcs_box(Vec2 centre, double half, Rng & rng)
{
  const double hx = half * uniform(rng, 0.5, 1.0);
  const double hy = half * uniform(rng, 0.5, 1.0);
  return make_shape(std::vector<VcsPosition>{
    {centre.x - hx, centre.y - hy, {}}, {centre.x + hx, centre.y - hy, {}},
    {centre.x + hx, centre.y + hy, {}}, {centre.x - hx, centre.y + hy, {}}});
}

/// Random structurally valid trace: every entity shares the VUT clock and
/// is present on a contiguous range of steps. Optional fields are filled at
/// random, trace-wide, so the writer's column pruning is exercised.
inline Trace random_trace(Rng & rng)
{
  Trace t;
  t.testcase_id = "TC-" + std::to_string(uniform_int(rng, 1, 99)) + "-A";
  t.run_id = uniform_int(rng, 1, 120);
  const double rate = std::vector<double>{10.0, 20.0, 25.0, 50.0}[static_cast<std::size_t>(uniform_int(rng, 0, 3))];
  const int steps = uniform_int(rng, 3, 25);
  const geo::LocalFrame frame(kSiteOrigin);
  const bool with_pitch = coin(rng);
  const bool with_elev = coin(rng, 0.3);
  double travelled = 0.0;
  for (int k = 0; k < steps; ++k) {
    VutState v;
    v.time = k / rate;
    v.step = k;
    v.pos = frame.from_local({uniform(rng, -300, 300), uniform(rng, -300, 300)});
    if (with_elev) {
      v.pos.elev = uniform(rng, -5, 20);
    }
    travelled += uniform(rng, 0, 2);
    v.travelled = travelled;
    v.speed = uniform(rng, 0, 15);
    v.acc_lat = uniform(rng, -3, 3);
    v.acc_long = uniform(rng, -9, 3);
    v.yaw_rate = uniform(rng, -20, 20);
    if (with_pitch) {
      v.pitch_rate = uniform(rng, -2, 2);
      v.roll_rate = uniform(rng, -2, 2);
    }
    v.heading = HeadingDeg(uniform(rng, 0, 360));
    v.indicators = {coin(rng), coin(rng), coin(rng), coin(rng), coin(rng), coin(rng), coin(rng)};
    v.throttle = uniform(rng, 0, 1);
    v.brake = uniform(rng, 0, 1);
    v.steering_angle = uniform(rng, -400, 400);
    v.drive_status = coin(rng, 0.9) ? DriveStatus{DriveMode::autonomous, {}} : DriveStatus{DriveMode::extension, "remote_assist"};
    v.special_op = coin(rng, 0.9) ? SpecialOp{SpecialOpMode::normal, {}} : SpecialOp{SpecialOpMode::environmental_service, {}};
    t.vut.push_back(v);
  }

  auto span = [&](int & first, int & last) {
    first = uniform_int(rng, 0, steps - 1);
    last = uniform_int(rng, first, steps - 1);
  };

  const int n_actors = uniform_int(rng, 0, 3);
  const bool actor_perceived = coin(rng, 0.3);
  const bool actor_heading = coin(rng, 0.7);
  for (int a = 0; a < n_actors; ++a) {
    const std::string id = "A" + std::to_string(a + 1);
    const bool vcs = coin(rng, 0.25);
    const ActorKind kind = static_cast<ActorKind>(uniform_int(rng, 0, 3));
    int first = 0;
    int last = 0;
    span(first, last);
    for (int k = first; k <= last; ++k) {
      ActorState s;
      s.id = id;
      s.time = t.vut[static_cast<std::size_t>(k)].time;
      s.step = k;
      s.type = ActorType{kind, {}};
      const Vec2 c{uniform(rng, -200, 200), uniform(rng, -200, 200)};
      if (vcs) {
        s.pos = VcsPosition{c.x, c.y, {}};
        s.bbox_true = vcs_box(c, 2.0, rng);
        if (actor_perceived) {
          s.bbox_perceived = vcs_box(c, 2.0, rng);
        }
      } else {
        s.pos = frame.from_local(c);
        s.bbox_true = geo_box(frame, c, 2.0, rng);
        if (actor_perceived) {
          s.bbox_perceived = geo_box(frame, c, 2.0, rng);
        }
      }
      s.speed = uniform(rng, 0, 10);
      s.vel_lat = uniform(rng, -2, 2);
      s.vel_long = uniform(rng, -10, 10);
      s.acc_lat = uniform(rng, -2, 2);
      s.acc_long = uniform(rng, -3, 3);
      if (actor_heading) {
        s.heading = HeadingDeg(uniform(rng, 0, 360));
      }
      s.ttc = coin(rng) ? kNoContact : uniform(rng, 0, 30);
      t.actors[id].push_back(s);
    }
  }

  const int n_obstacles = uniform_int(rng, 0, 2);
  const bool obstacle_perceived = coin(rng, 0.3);
  for (int o = 0; o < n_obstacles; ++o) {
    const std::string id = "O" + std::to_string(o + 1);
    int first = 0;
    int last = 0;
    span(first, last);
    const Vec2 c{uniform(rng, -100, 100), uniform(rng, -100, 100)};
    const int code = coin(rng) ? kConstructionCones : uniform_int(rng, 101, 299);
    for (int k = first; k <= last; ++k) {
      ObstacleState s;
      s.id = id;
      s.time = t.vut[static_cast<std::size_t>(k)].time;
      s.step = k;
      s.type = ObstacleType{code};
      s.pos = frame.from_local(c);
      s.poly_true = geo_box(frame, c, 1.0, rng);
      if (obstacle_perceived) {
        s.poly_perceived = geo_box(frame, c, 1.0, rng);
      }
      s.ntd = coin(rng) ? kNoContact : uniform(rng, 0, 30);
      t.obstacles[id].push_back(s);
    }
  }

  const int n_controllers = uniform_int(rng, 0, 2);
  const bool phase_perceived = coin(rng, 0.3);
  for (int c = 0; c < n_controllers; ++c) {
    const std::string id = "TL" + std::to_string(c + 1);
    int first = 0;
    int last = 0;
    span(first, last);
    for (int k = first; k <= last; ++k) {
      TrafficControllerState s;
      s.id = id;
      s.time = t.vut[static_cast<std::size_t>(k)].time;
      s.step = k;
      s.phase = TrafficPhase{static_cast<PhaseKind>(uniform_int(rng, 0, 2)), {}};
      if (phase_perceived) {
        s.phase_perceived = TrafficPhase{static_cast<PhaseKind>(uniform_int(rng, 0, 2)), {}};
      }
      t.controllers[id].push_back(s);
    }
  }
  t.declared_frequency = nominal_rate(t.vut);
  return t;
}

}  // namespace vista::test

#endif  // VISTA_TESTS__SUPPORT_HPP_
