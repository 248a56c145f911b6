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

#include "vista/synth.hpp"

#include "vista/clearance.hpp"
#include "vista/error.hpp"
#include "vista/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace vista::synth
{

namespace
{

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kSteeringRatio = 15.0;
constexpr double kWheelbaseFraction = 0.6;
constexpr double kGravity = 9.81;

// Kerb-aligned road coordinates: s along the road, d rightwards of the kerb.
class Road
{
public:
  Road(const GeoPosition & origin, double heading)
  : frame_(origin),
    heading_(heading),
    along_(geo::heading_vector(HeadingDeg(heading))),
    right_(geo::heading_vector(HeadingDeg(heading + 90.0)))
  {
  }

  double heading() const { return heading_; }

  GeoPosition at(double s, double d) const { return frame_.from_local(s * along_ + d * right_); }

  BoundingShape box(double s, double d, double length, double width) const
  {
    const double hl = 0.5 * length;
    const double hw = 0.5 * width;
    return make_shape(std::vector<GeoPosition>{
      at(s + hl, d - hw), at(s + hl, d + hw), at(s - hl, d + hw), at(s - hl, d - hw)});
  }

private:
  geo::LocalFrame frame_;
  double heading_;
  Vec2 along_;
  Vec2 right_;
};

struct Lateral
{
  double d{};
  double slope{};
  double bend{};
};

// Piecewise lateral offset d(s): constant stretches joined by quintic
// smootherstep transitions, so d' and d'' vanish at both ends of each.
class LateralProfile
{
public:
  explicit LateralProfile(double base) : base_(base) {}

  void transition(double s0, double length, double to)
  {
    const double from = transitions_.empty() ? base_ : transitions_.back().to;
    transitions_.push_back({s0, length, from, to});
  }

  Lateral at(double s) const
  {
    double current = base_;
    for (const auto & t : transitions_) {
      if (s < t.s0) {
        break;
      }
      if (s <= t.s0 + t.length) {
        const double x = (s - t.s0) / t.length;
        const double delta = t.to - t.from;
        const double f = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
        const double f1 = 30.0 * x * x * (1.0 + x * (-2.0 + x));
        const double f2 = 60.0 * x * (1.0 + x * (-3.0 + 2.0 * x));
        return {t.from + delta * f, delta * f1 / t.length, delta * f2 / (t.length * t.length)};
      }
      current = t.to;
    }
    return {current, 0.0, 0.0};
  }

private:
  struct Transition
  {
    double s0;
    double length;
    double from;
    double to;
  };
  double base_;
  std::vector<Transition> transitions_;
};

// Along-road motion built from constant-acceleration segments.
class Motion
{
public:
  struct State
  {
    double s{};
    double v{};
    double a{};
  };

  explicit Motion(double v0 = 0.0) : end_{0.0, v0, 0.0} {}

  double end_time() const { return end_time_; }
  const State & end() const { return end_; }

  void hold(double a, double duration)
  {
    if (!(duration > 0.0)) {
      return;
    }
    segments_.push_back({end_time_, end_.s, end_.v, a, duration});
    end_time_ += duration;
    end_.s += end_.v * duration + 0.5 * a * duration * duration;
    end_.v = std::max(0.0, end_.v + a * duration);
  }
  void change_speed(double target, double rate)
  {
    hold(target > end_.v ? rate : -rate, std::abs(target - end_.v) / rate);
    end_.v = target;
  }
  void cruise_until(double s)
  {
    if (end_.v > 0.0 && s > end_.s) {
      hold(0.0, (s - end_.s) / end_.v);
    }
  }
  static double stopping_distance(double from, double to, double rate)
  {
    return (from * from - to * to) / (2.0 * rate);
  }

  State at(double t) const
  {
    for (const auto & seg : segments_) {
      if (t <= seg.t0 + seg.duration) {
        const double dt = std::max(0.0, t - seg.t0);
        return {seg.s0 + seg.v0 * dt + 0.5 * seg.a * dt * dt, std::max(0.0, seg.v0 + seg.a * dt), seg.a};
      }
    }
    const double dt = t - end_time_;
    return {end_.s + end_.v * dt, end_.v, 0.0};
  }

private:
  struct Segment
  {
    double t0;
    double s0;
    double v0;
    double a;
    double duration;
  };
  std::vector<Segment> segments_;
  double end_time_{0.0};
  State end_;
};

// Arc length of the lateral profile between two stations (Simpson's rule).
double arc_length(const LateralProfile & lateral, double s0, double s1)
{
  if (s1 <= s0) {
    return 0.0;
  }
  constexpr int kPanels = 16;
  const double h = (s1 - s0) / kPanels;
  auto f = [&](double s) {
    const double slope = lateral.at(s).slope;
    return std::sqrt(1.0 + slope * slope);
  };
  double sum = f(s0) + f(s1);
  for (int i = 1; i < kPanels; ++i) {
    sum += f(s0 + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

struct Indicators
{
  bool right{false};
  bool left{false};
};

VutState vut_state(
  const Road & road, const LateralProfile & lateral, const Motion::State & m, double time,
  std::int64_t step, double travelled, double wheelbase, Indicators signals)
{
  const Lateral lat = lateral.at(m.s);
  const double g = 1.0 + lat.slope * lat.slope;
  const double root = std::sqrt(g);
  const double curvature = lat.bend / (g * root);

  VutState s;
  s.time = time;
  s.step = step;
  s.pos = road.at(m.s, lat.d);
  s.travelled = travelled;
  s.speed = m.v * root;
  s.acc_long = m.a * root + m.v * m.v * lat.slope * lat.bend / root;
  s.acc_lat = s.speed * s.speed * curvature;
  s.yaw_rate = m.v * lat.bend / g * kRadToDeg;
  s.heading = HeadingDeg(road.heading() + std::atan(lat.slope) * kRadToDeg);
  s.steering_angle = kSteeringRatio * std::atan(wheelbase * curvature) * kRadToDeg;
  const bool moving = m.v > 0.0;
  s.throttle = moving && m.a >= 0.0 ? std::clamp(0.1 + m.a / 3.0, 0.0, 1.0) : 0.0;
  s.brake = m.a < 0.0 ? std::clamp(-m.a / kGravity, 0.0, 1.0) : (moving ? 0.0 : 0.3);
  s.indicators.brake = s.brake > 0.0;
  s.indicators.right_front = s.indicators.right_rear = signals.right;
  s.indicators.left_front = s.indicators.left_rear = signals.left;
  s.drive_status = DriveStatus{DriveMode::autonomous, {}};
  s.special_op = SpecialOp{SpecialOpMode::normal, {}};
  return s;
}

// Samples the VUT along the motion at the given rate until `duration`.
template <typename SignalFn>
std::vector<VutState> sample_vut(
  const Road & road, const LateralProfile & lateral, const Motion & motion, double duration,
  double rate, double wheelbase, SignalFn signals)
{
  std::vector<VutState> out;
  const auto count = static_cast<std::int64_t>(std::floor(duration * rate + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  double travelled = 0.0;
  double previous_s = motion.at(0.0).s;
  for (std::int64_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / rate;
    const auto m = motion.at(t);
    travelled += arc_length(lateral, previous_s, m.s);
    previous_s = m.s;
    out.push_back(vut_state(road, lateral, m, t, k, travelled, wheelbase, signals(m.s)));
  }
  return out;
}

// Fills each actor's TTC and each obstacle's NTD from the clearance module.
void fill_contact_times(Trace & trace, const VehicleProfile & profile)
{
  for (auto & [id, records] : trace.actors) {
    const auto series = clearance::clearance_series(trace, id, profile);
    for (std::size_t i = 0; i < records.size() && i < series.samples.size(); ++i) {
      records[i].ttc = series.samples[i].ntd;
    }
  }
  for (auto & [id, records] : trace.obstacles) {
    const auto series = clearance::clearance_series(trace, id, profile);
    for (std::size_t i = 0; i < records.size() && i < series.samples.size(); ++i) {
      records[i].ntd = series.samples[i].ntd;
    }
  }
}

ActorState actor_at(
  const VutState & vut, const std::string & id, ActorType type, const Road & road, double s,
  double d, double length, double width, double speed, double heading_offset)
{
  ActorState a;
  a.id = id;
  a.time = vut.time;
  a.step = vut.step;
  a.type = std::move(type);
  a.pos = road.at(s, d);
  a.bbox_true = road.box(s, d, length, width);
  a.speed = speed;
  a.vel_long = speed;
  a.heading = HeadingDeg(road.heading() + heading_offset);
  return a;
}

void require(bool condition, const std::string & why)
{
  if (!condition) {
    throw Error(Errc::infeasible_spec, why);
  }
}

}  // namespace

std::string_view to_string(Case c)
{
  switch (c) {
    case Case::case1: return "case1";
    case Case::case2: return "case2";
    case Case::case3: return "case3";
  }
  return "case1";
}

std::optional<Case> parse_case(std::string_view text)
{
  for (const Case c : {Case::case1, Case::case2, Case::case3}) {
    if (to_string(c) == text) {
      return c;
    }
  }
  return std::nullopt;
}

double default_target(Case c)
{
  switch (c) {
    case Case::case1: return 0.21;
    case Case::case2: return 0.52;
    case Case::case3: return 1.53;
  }
  return 0.21;
}

Trace synthesize(const ScenarioSpec & spec, Case c, int run_id)
{
  const double target = spec.target_min_lateral_clearance.value_or(default_target(c));
  const double vut_length = spec.vut.length;
  const double vut_width = spec.vut.width;
  require(target >= 0.0, "target clearance must be non-negative");
  require(spec.sample_rate >= 1.0, "sample rate must be at least 1 Hz");
  require(run_id >= 1, "run id must be positive");
  require(spec.lane_width > 0.0 && spec.tsv_length > 0.0 && spec.tsv_width > 0.0, "road and TSV dimensions must be positive");

  const double tsv_centre = spec.tsv_kerb_offset + 0.5 * spec.tsv_width;
  const double tsv_right = spec.tsv_kerb_offset + spec.tsv_width;
  const double lane_centre = 0.5 * spec.lane_width;
  const double peak = tsv_right + target + 0.5 * vut_width;
  require(
    peak + 0.5 * vut_width <= 2.0 * spec.lane_width,
    "target clearance " + std::to_string(target) + " m does not fit within the road width");
  require(peak >= lane_centre, "target clearance leaves the VUT inside its own lane");

  // Cruise speed jittered per run, always below the cap.
  std::mt19937_64 rng(spec.seed * 1000003ULL + static_cast<std::uint64_t>(run_id));
  std::uniform_real_distribution<double> jitter(-spec.cruise_jitter, spec.cruise_jitter);
  const double cruise = std::min(spec.cruise_speed, spec.speed_cap - spec.cruise_jitter - 0.01) + jitter(rng);
  const double overtake = std::min(spec.overtake_speed, cruise);
  require(overtake > 0.0 && cruise > 0.0, "speed cap leaves no feasible cruise speed");

  const double half_overlap = 0.5 * (spec.tsv_length + vut_length) + spec.plateau_margin;
  const double plateau_start = spec.tsv_station - half_overlap;
  const double plateau_end = spec.tsv_station + half_overlap;
  const double out_length = c == Case::case2 ? spec.pull_out_length : spec.lane_change_length;
  const double change_start = plateau_start - out_length;
  const double return_end = plateau_end + spec.lane_change_length;

  LateralProfile lateral(lane_centre);
  lateral.transition(change_start, out_length, peak);
  lateral.transition(plateau_end, spec.lane_change_length, lane_centre);

  constexpr double kLaunch = 2.5;
  constexpr double kResume = 2.0;
  Motion motion;
  motion.change_speed(cruise, kLaunch);
  if (c == Case::case2) {
    constexpr double kDwell = 2.0;
    constexpr double kCreep = 1.5;
    constexpr double kCreepSpeed = 5.0;
    motion.cruise_until(change_start - Motion::stopping_distance(cruise, 0.0, spec.decel_magnitude));
    motion.change_speed(0.0, spec.decel_magnitude);
    require(motion.end().s <= change_start + 1e-6, "TSV station leaves no room to stop before the pull-out");
    motion.hold(0.0, kDwell);
    motion.change_speed(std::min(kCreepSpeed, cruise), kCreep);
  } else {
    constexpr double kSettle = 5.0;
    motion.cruise_until(
      change_start - kSettle - Motion::stopping_distance(cruise, overtake, spec.decel_magnitude));
    motion.change_speed(overtake, spec.decel_magnitude);
    require(motion.end().s <= change_start + 1e-6, "TSV station leaves no room to brake before the lane change");
  }
  motion.cruise_until(return_end + 5.0);
  motion.change_speed(cruise, kResume);
  motion.hold(0.0, 4.0);

  const Road road(spec.origin, spec.road_heading);
  Trace trace;
  trace.testcase_id = spec.testcase_id;
  trace.run_id = run_id;
  trace.vut = sample_vut(
    road, lateral, motion, motion.end_time(), spec.sample_rate, kWheelbaseFraction * vut_length,
    [&](double s) {
      return Indicators{s >= change_start - 10.0 && s < plateau_start, s >= plateau_end && s < return_end};
    });

  auto & tsv = trace.actors["TSV1"];
  tsv.reserve(trace.vut.size());
  for (const auto & v : trace.vut) {
    tsv.push_back(actor_at(
      v, "TSV1", ActorType{ActorKind::tsv, {}}, road, spec.tsv_station, tsv_centre, spec.tsv_length,
      spec.tsv_width, 0.0, 0.0));
  }
  fill_contact_times(trace, spec.vut);
  trace.declared_frequency = nominal_rate(trace.vut);
  return trace;
}

std::vector<Trace> synthesize_runs(const ScenarioSpec & spec, Case c)
{
  require(spec.runs >= 1 && spec.runs <= 999, "run count must lie in 1..999");
  std::vector<Trace> out;
  out.reserve(static_cast<std::size_t>(spec.runs));
  for (int r = 1; r <= spec.runs; ++r) {
    out.push_back(synthesize(spec, c, r));
  }
  return out;
}

Trace perturb(
  const Trace & trace, double position_sigma, double speed_sigma, double time_shift,
  std::uint64_t seed)
{
  if (!(position_sigma >= 0.0) || !(speed_sigma >= 0.0)) {
    throw Error(Errc::invalid_argument, "noise sigma must be non-negative");
  }
  Trace out = trace;
  const auto & src = trace.vut;
  if (src.empty()) {
    return out;
  }
  for (std::size_t k = 0; k < src.size(); ++k) {
    const double t = src[k].time - time_shift;
    VutState state;
    if (t <= src.front().time) {
      state = src.front();
    } else if (t >= src.back().time) {
      state = src.back();
    } else {
      const auto hi = std::upper_bound(
        src.begin(), src.end(), t, [](double value, const VutState & s) { return value < s.time; });
      const VutState & b = *hi;
      const VutState & a = *(hi - 1);
      state = a;
      if (t > a.time) {
        const double f = (t - a.time) / (b.time - a.time);
        auto mix = [f](double x, double y) { return x + f * (y - x); };
        state.pos.lat = mix(a.pos.lat, b.pos.lat);
        state.pos.lon = mix(a.pos.lon, b.pos.lon);
        state.travelled = mix(a.travelled, b.travelled);
        state.speed = mix(a.speed, b.speed);
        state.acc_lat = mix(a.acc_lat, b.acc_lat);
        state.acc_long = mix(a.acc_long, b.acc_long);
        state.yaw_rate = mix(a.yaw_rate, b.yaw_rate);
        state.throttle = mix(a.throttle, b.throttle);
        state.brake = mix(a.brake, b.brake);
        state.steering_angle = mix(a.steering_angle, b.steering_angle);
        state.heading = HeadingDeg(a.heading.value() + f * heading_difference(b.heading, a.heading));
      }
    }
    state.time = src[k].time;
    state.step = src[k].step;
    out.vut[k] = state;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (auto & s : out.vut) {
    if (position_sigma > 0.0) {
      const Vec2 offset{position_sigma * unit(rng), position_sigma * unit(rng)};
      s.pos = geo::LocalFrame(s.pos).from_local(offset, s.pos.elev);
    }
    if (speed_sigma > 0.0) {
      s.speed = std::max(0.0, s.speed + speed_sigma * unit(rng));
    }
  }
  return out;
}

Trace synthesize_probe(rules::ContextClass context, double clearance_m, double sample_rate)
{
  using rules::ContextClass;
  require(clearance_m >= 0.0, "probe clearance must be non-negative");
  require(sample_rate >= 1.0, "sample rate must be at least 1 Hz");

  const ScenarioSpec spec;
  const VehicleProfile & vut = spec.vut;
  const Road road(spec.origin, spec.road_heading);
  const double lane_centre = 0.5 * spec.lane_width;
  constexpr double kVutSpeed = 8.0;
  constexpr double kDuration = 8.0;
  constexpr double kEntityStation = 40.0;

  struct Entity
  {
    ActorType type;
    double length;
    double width;
    double speed;
    double heading_offset;
  };
  const bool lead = context == ContextClass::lead_road_user || context == ContextClass::lead_obstacle;

  Motion motion(kVutSpeed);
  double duration = kDuration;
  if (context == ContextClass::lead_obstacle) {
    // Brake to a standstill with the bumper `clearance_m` short of the
    // obstacle, then wait.
    constexpr double kBrake = 2.0;
    motion.cruise_until(20.0);
    motion.change_speed(0.0, kBrake);
    motion.hold(0.0, 2.0);
    duration = motion.end_time();
  } else {
    motion.hold(0.0, kDuration);
  }
  const double stop_station = motion.end().s;

  const LateralProfile lateral(lane_centre);
  Trace trace;
  trace.testcase_id = "PROBE-" + std::string(rules::to_string(context));
  trace.run_id = 1;
  trace.vut = sample_vut(
    road, lateral, motion, duration, sample_rate, kWheelbaseFraction * vut.length,
    [](double) { return Indicators{}; });

  if (context == ContextClass::static_obstacle || context == ContextClass::lead_obstacle) {
    constexpr double kLength = 1.0;
    constexpr double kWidth = 0.4;
    const double s = lead ? stop_station + 0.5 * vut.length + clearance_m + 0.5 * kLength : kEntityStation;
    const double d = lead ? lane_centre : lane_centre - 0.5 * vut.width - clearance_m - 0.5 * kWidth;
    auto & records = trace.obstacles["CONE1"];
    for (const auto & v : trace.vut) {
      ObstacleState o;
      o.id = "CONE1";
      o.time = v.time;
      o.step = v.step;
      o.type = ObstacleType{kConstructionCones};
      o.pos = road.at(s, d);
      o.poly_true = road.box(s, d, kLength, kWidth);
      records.push_back(std::move(o));
    }
    fill_contact_times(trace, vut);
    trace.declared_frequency = nominal_rate(trace.vut);
    return trace;
  }

  Entity e{ActorType{ActorKind::tsv, {}}, spec.tsv_length, spec.tsv_width, 0.0, 0.0};
  switch (context) {
    case ContextClass::stopped_or_parked_vehicle: break;
    case ContextClass::moving_tsv: e.speed = 2.0; break;
    case ContextClass::pedestrian_facing_traffic:
      e = {ActorType{ActorKind::vru_pedestrian, {}}, 0.5, 0.5, 0.0, 180.0};
      break;
    case ContextClass::pedestrian_facing_away:
      e = {ActorType{ActorKind::vru_pedestrian, {}}, 0.5, 0.5, 0.0, 0.0};
      break;
    case ContextClass::cyclist: e = {ActorType{ActorKind::vru_cyclist, {}}, 1.8, 0.6, 3.0, 0.0}; break;
    case ContextClass::pmd_rider: e = {ActorType{ActorKind::vru_pmd, {}}, 1.2, 0.6, 2.5, 0.0}; break;
    case ContextClass::lead_road_user: e.speed = kVutSpeed; break;
    case ContextClass::static_obstacle:
    case ContextClass::lead_obstacle: break;
  }

  auto & records = trace.actors["ACTOR1"];
  for (const auto & v : trace.vut) {
    double s = 0.0;
    double d = 0.0;
    if (lead) {
      s = motion.at(v.time).s + 0.5 * vut.length + clearance_m + 0.5 * e.length;
      d = lane_centre;
    } else {
      s = kEntityStation + e.speed * v.time;
      d = lane_centre - 0.5 * vut.width - clearance_m - 0.5 * e.width;
    }
    records.push_back(actor_at(v, "ACTOR1", e.type, road, s, d, e.length, e.width, e.speed, e.heading_offset));
  }
  fill_contact_times(trace, vut);
  trace.declared_frequency = nominal_rate(trace.vut);
  return trace;
}

}  // namespace vista::synth
