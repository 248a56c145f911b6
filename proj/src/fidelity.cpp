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

#include "vista/fidelity.hpp"

#include "vista/error.hpp"
#include "vista/geo.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vista::fidelity
{

namespace
{

struct Sample
{
  double t;
  Vec2 p;
  double speed;
  double heading;
};

std::vector<Sample> planar_track(const Trace & trace, const geo::LocalFrame & frame)
{
  std::vector<Sample> out;
  out.reserve(trace.vut.size());
  for (const auto & s : trace.vut) {
    out.push_back({s.time, frame.to_local(s.pos), s.speed, s.heading.value()});
  }
  return out;
}

// Linear interpolation; t is clamped to the track span.
Sample interpolate(const std::vector<Sample> & track, double t)
{
  if (t <= track.front().t) {
    return track.front();
  }
  if (t >= track.back().t) {
    return track.back();
  }
  const auto hi = std::upper_bound(
    track.begin(), track.end(), t, [](double value, const Sample & s) { return value < s.t; });
  const Sample & b = *hi;
  const Sample & a = *(hi - 1);
  const double f = (t - a.t) / (b.t - a.t);
  Sample out;
  out.t = t;
  out.p = a.p + f * (b.p - a.p);
  out.speed = a.speed + f * (b.speed - a.speed);
  out.heading = HeadingDeg::normalize(
    a.heading + f * heading_difference(HeadingDeg(b.heading), HeadingDeg(a.heading)));
  return out;
}

double speed_at(const std::vector<VutState> & vut, double t)
{
  if (t <= vut.front().time) {
    return vut.front().speed;
  }
  if (t >= vut.back().time) {
    return vut.back().speed;
  }
  const auto hi = std::upper_bound(
    vut.begin(), vut.end(), t, [](double value, const VutState & s) { return value < s.time; });
  const auto & b = *hi;
  const auto & a = *(hi - 1);
  return a.speed + (t - a.time) / (b.time - a.time) * (b.speed - a.speed);
}

double duration(const Trace & t) { return t.vut.empty() ? 0.0 : t.vut.back().time - t.vut.front().time; }

double common_rate(const Trace & a, const Trace & b)
{
  return std::min(std::max(nominal_rate(a.vut), nominal_rate(b.vut)), kMaxResampleRate);
}

void require_span(const Trace & virtual_trace, const Trace & reference)
{
  if (virtual_trace.vut.size() < 2 || reference.vut.size() < 2 ||
      duration(virtual_trace) < kMinDuration || duration(reference) < kMinDuration) {
    throw Error(Errc::insufficient_overlap, "both traces need at least 2 s of VUT data");
  }
}

struct Window
{
  double lo;
  double hi;
};

// Virtual-time interval whose shifted counterpart lies inside the reference.
Window overlap(const Trace & virtual_trace, const Trace & reference, double tau)
{
  return {
    std::max(virtual_trace.vut.front().time, reference.vut.front().time - tau),
    std::min(virtual_trace.vut.back().time, reference.vut.back().time - tau)};
}

double required_overlap(const Trace & a, const Trace & b)
{
  return kMinOverlapFraction * std::min(duration(a), duration(b));
}

std::size_t grid_size(Window w, double rate)
{
  return static_cast<std::size_t>(std::floor((w.hi - w.lo) * rate + 1e-9)) + 1;
}

}  // namespace

Tolerances parse_tolerances(std::string_view json_text)
{
  Tolerances tol;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception & e) {
    throw Error(Errc::invalid_argument, std::string("tolerance file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(Errc::invalid_argument, "tolerance file must hold a JSON object");
  }
  for (const auto & [key, value] : doc.items()) {
    if (!value.is_number() || !(value.get<double>() >= 0.0)) {
      throw Error(Errc::invalid_argument, "tolerance '" + key + "' must be a non-negative number");
    }
    const double v = value.get<double>();
    if (key == "position_rmse") {
      tol.position_rmse = v;
    } else if (key == "speed_rmse") {
      tol.speed_rmse = v;
    } else if (key == "heading_rmse") {
      tol.heading_rmse = v;
    } else {
      throw Error(Errc::invalid_argument, "unknown tolerance '" + key + "'");
    }
  }
  return tol;
}

double align(const Trace & virtual_trace, const Trace & reference)
{
  require_span(virtual_trace, reference);
  const double rate = common_rate(virtual_trace, reference);
  const double needed = required_overlap(virtual_trace, reference);
  const int steps = static_cast<int>(std::lround(kSearchWindow / kSearchStep));

  std::optional<double> best_tau;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = -steps; k <= steps; ++k) {
    const double tau = k * kSearchStep;
    const Window w = overlap(virtual_trace, reference, tau);
    if (!(w.hi - w.lo >= needed) || !(w.hi > w.lo)) {
      continue;
    }
    const std::size_t n = grid_size(w, rate);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = w.lo + static_cast<double>(i) / rate;
      const double d = speed_at(reference.vut, t + tau) - speed_at(virtual_trace.vut, t);
      sum += d * d;
    }
    const double cost = sum / static_cast<double>(n);
    const bool better = cost < best_cost ||
                        (cost == best_cost && best_tau && std::abs(tau) < std::abs(*best_tau));
    if (better) {
      best_cost = cost;
      best_tau = tau;
    }
  }
  if (!best_tau) {
    throw Error(Errc::insufficient_overlap, "no offset within +/-5 s gives enough overlap");
  }
  return *best_tau;
}

FidelityReport compare(
  const Trace & virtual_trace, const Trace & reference, const Tolerances & tolerances,
  std::optional<double> offset)
{
  require_span(virtual_trace, reference);
  FidelityReport report;
  report.offset = offset ? *offset : align(virtual_trace, reference);
  report.resample_rate = common_rate(virtual_trace, reference);

  const Window w = overlap(virtual_trace, reference, report.offset);
  if (!(w.hi > w.lo) || w.hi - w.lo < required_overlap(virtual_trace, reference)) {
    throw Error(
      Errc::insufficient_overlap, "aligned traces overlap less than 80 % of the shorter trace");
  }

  // Shared planar frame anchored midway between the two start positions.
  const auto & a0 = virtual_trace.vut.front().pos;
  const auto & b0 = reference.vut.front().pos;
  const geo::LocalFrame frame(GeoPosition{0.5 * (a0.lat + b0.lat), 0.5 * (a0.lon + b0.lon), {}});
  const auto virt = planar_track(virtual_trace, frame);
  const auto ref = planar_track(reference, frame);

  const std::size_t n = grid_size(w, report.resample_rate);
  double pos_sq = 0.0;
  double speed_sq = 0.0;
  double heading_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = w.lo + static_cast<double>(i) / report.resample_rate;
    const Sample v = interpolate(virt, t);
    const Sample r = interpolate(ref, t + report.offset);
    const double dp = norm(r.p - v.p);
    pos_sq += dp * dp;
    report.max_position_deviation = std::max(report.max_position_deviation, dp);
    const double ds = r.speed - v.speed;
    speed_sq += ds * ds;
    const double dh = heading_difference(HeadingDeg(r.heading), HeadingDeg(v.heading));
    heading_sq += dh * dh;
  }
  const double count = static_cast<double>(n);
  report.samples = n;
  report.position_rmse = std::sqrt(pos_sq / count);
  report.speed_rmse = std::sqrt(speed_sq / count);
  report.heading_rmse = std::sqrt(heading_sq / count);
  report.position_pass = report.position_rmse <= tolerances.position_rmse;
  report.speed_pass = report.speed_rmse <= tolerances.speed_rmse;
  report.heading_pass = report.heading_rmse <= tolerances.heading_rmse;
  report.pass = report.position_pass && report.speed_pass && report.heading_pass;
  report.recalibration_needed = !report.pass;
  return report;
}

std::vector<std::string> select_recalibration_subset(
  const std::vector<std::string> & testcase_ids, double fraction, std::uint64_t seed)
{
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(Errc::invalid_argument, "recalibration fraction must lie in (0, 1]");
  }
  const std::size_t n = testcase_ids.size();
  const auto take = std::min(
    n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));

  // Fisher-Yates over indices with an unbiased bounded draw, so the subset
  // depends only on the seed and not on the standard library in use.
  std::mt19937_64 rng(seed);
  auto bounded = [&rng](std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) {
      x = rng();
    }
    return x % bound;
  };
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = i;
  }
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[bounded(i)]);
  }
  order.resize(take);
  std::sort(order.begin(), order.end());
  std::vector<std::string> out;
  out.reserve(take);
  for (const auto i : order) {
    out.push_back(testcase_ids[i]);
  }
  return out;
}

}  // namespace vista::fidelity
