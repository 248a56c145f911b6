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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include "oracles.hpp"
#include "support.hpp"

#include "vista/app.hpp"
#include "vista/clearance.hpp"
#include "vista/fidelity.hpp"
#include "vista/geo.hpp"
#include "vista/polygon.hpp"
#include "vista/position_array.hpp"
#include "vista/reader.hpp"
#include "vista/rules.hpp"
#include "vista/synth.hpp"
#include "vista/writer.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

namespace vista
{
namespace
{

namespace fs = std::filesystem;
using nlohmann::json;
using test::Rng;

struct CriterionResult
{
  bool pass{true};
  std::string detail;

  /// Records the first failing check; later checks keep running.
  void check(bool ok, const std::string & what)
  {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

json load_json(const fs::path & p)
{
  std::ifstream in(p);
  return json::parse(in);
}

std::string fmt(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------- 1 and 3

struct CaseExpectation
{
  synth::Case scenario_case;
  double minimum;
  bool pass;
};

constexpr CaseExpectation kWorkedCases[] = {
  {synth::Case::case1, 0.21, false},
  {synth::Case::case2, 0.52, false},
  {synth::Case::case3, 1.53, true},
};

/// Generates ten runs per worked case and evaluates them through the
/// command layer; the report directory per case is returned.
struct WorkedRuns
{
  test::TempDir dir{"acceptance"};
  fs::path reports[3];
  int exit_codes[3]{-1, -1, -1};
  double seconds[3]{};
};

WorkedRuns & worked_runs()
{
  static WorkedRuns w;
  static const bool ready = [] {
    for (int i = 0; i < 3; ++i) {
      const auto start = std::chrono::steady_clock::now();
      const std::string name(synth::to_string(kWorkedCases[i].scenario_case));
      app::Options options;
      options.out = w.dir.path() / name / "runs";
      options.jobs = 4;
      std::ostringstream sink;
      app::GenerateRequest request;
      request.scenario_case = kWorkedCases[i].scenario_case;
      request.runs = 10;
      if (app::cmd_generate(request, options, sink, sink) != app::kSuccess) {
        continue;
      }
      app::Options eval = options;
      eval.out = w.dir.path() / name / "reports";
      eval.n_required = 10;
      w.exit_codes[i] = app::cmd_evaluate({options.out}, eval, sink, sink);
      w.reports[i] = eval.out;
      w.seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return true;
  }();
  (void)ready;
  return w;
}

const json * spread(const json & summary, std::string_view rule)
{
  for (const auto & s : summary.at("spreads")) {
    if (s.at("rule") == rule) {
      return &s;
    }
  }
  return nullptr;
}

CriterionResult worked_case_reproduction()
{
  CriterionResult o;
  auto & w = worked_runs();
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const auto & expect = kWorkedCases[i];
    const std::string name(synth::to_string(expect.scenario_case));
    o.check(w.exit_codes[i] == (expect.pass ? 0 : 1), name + ": unexpected exit code " + std::to_string(w.exit_codes[i]));
    if (w.exit_codes[i] < 0) {
      continue;
    }
    const json summary = load_json(w.reports[i] / "M2-CL4-S-TST-05-01.summary.json");
    const json * lateral = spread(summary, rules::kLateralRule);
    o.check(lateral != nullptr, name + ": no lateral clearance verdicts");
    if (lateral == nullptr) {
      continue;
    }
    const double lo = lateral->at("min").get<double>();
    const double hi = lateral->at("max").get<double>();
    o.check(lateral->at("runs") == 10, name + ": expected 10 evaluated runs");
    o.check(std::abs(lo - expect.minimum) <= 0.01 && std::abs(hi - expect.minimum) <= 0.01,
            name + ": lateral minimum spread [" + fmt(lo) + ", " + fmt(hi) + "] vs " + fmt(expect.minimum));
    o.check(summary.at("pass").get<bool>() == expect.pass, name + ": wrong verdict");
    o.check(w.seconds[i] < 10.0, name + ": took " + fmt(w.seconds[i]) + " s");
    detail += name + " min " + fmt(lo) + ".." + fmt(hi) + (expect.pass ? " PASS" : " FAIL") + " in " +
              fmt(w.seconds[i]) + " s; ";
  }
  if (o.pass) {
    o.detail = detail;
  }
  return o;
}

CriterionResult kinematic_rules()
{
  CriterionResult o;
  auto & w = worked_runs();
  double case3_top = 0.0;
  for (int i = 0; i < 3; ++i) {
    const std::string name(synth::to_string(kWorkedCases[i].scenario_case));
    o.check(!w.reports[i].empty(), name + ": no reports");
    if (w.reports[i].empty()) {
      continue;
    }
    for (int r = 1; r <= 10; ++r) {
      char stem[64];
      std::snprintf(stem, sizeof(stem), "M2-CL4-S-TST-05-01_r%02d.evaluation.json", r);
      const json run = load_json(w.reports[i] / stem);
      for (const auto & v : run.at("verdicts")) {
        if (v.at("rule") == rules::kDecelRule) {
          o.check(v.at("outcome") == "warning", name + " run " + std::to_string(r) + ": no deceleration warning");
        }
        if (i == 2 && v.at("rule") == rules::kSpeedRule) {
          case3_top = std::max(case3_top, v.at("extremum").get<double>());
          o.check(v.at("outcome") == "pass", "case3 run " + std::to_string(r) + ": speed verdict not PASS");
        }
      }
    }
  }
  o.check(case3_top > 0.0 && case3_top <= 11.11, "case3 max speed " + fmt(case3_top));
  if (o.pass) {
    o.detail = "case3 max speed " + fmt(case3_top) + " m/s; deceleration warning in all 30 runs";
  }
  return o;
}

// ---------------------------------------------------------------- 2

CriterionResult threshold_table()
{
  CriterionResult o;
  const rules::RuleSet defaults;
  constexpr rules::ContextClass kAll[] = {
    rules::ContextClass::static_obstacle,        rules::ContextClass::stopped_or_parked_vehicle,
    rules::ContextClass::pedestrian_facing_traffic, rules::ContextClass::moving_tsv,
    rules::ContextClass::pedestrian_facing_away, rules::ContextClass::cyclist,
    rules::ContextClass::pmd_rider,              rules::ContextClass::lead_road_user,
    rules::ContextClass::lead_obstacle,
  };
  constexpr double kResolution = 0.01;
  std::string detail;
  for (const auto context : kAll) {
    const bool lead = context == rules::ContextClass::lead_road_user || context == rules::ContextClass::lead_obstacle;
    const std::string_view rule = lead ? rules::kLongitudinalRule : rules::kLateralRule;
    const double threshold = lead ? defaults.longitudinal : defaults.lateral_threshold(context);
    const std::string name(rules::to_string(context));
    std::optional<double> first_pass;
    for (int k = -10; k <= 10; ++k) {
      const double c = threshold + k * kResolution;
      const auto run = rules::evaluate_run(synth::synthesize_probe(context, c), defaults);
      const rules::RuleVerdict * verdict = nullptr;
      for (const auto & v : run.verdicts) {
        if (v.rule_id == rule) {
          verdict = &v;
        }
      }
      o.check(verdict != nullptr, name + ": no verdict at " + fmt(c));
      if (verdict == nullptr) {
        break;
      }
      o.check(verdict->context == context, name + ": classified as another context at " + fmt(c));
      const bool passed = verdict->outcome == rules::Outcome::pass;
      if (k < 0) {
        o.check(!passed, name + ": passes below the threshold at " + fmt(c));
      } else if (k > 0) {
        o.check(passed, name + ": fails above the threshold at " + fmt(c));
      }
      if (passed && !first_pass) {
        first_pass = c;
      }
    }
    o.check(first_pass && std::abs(*first_pass - threshold) <= kResolution + 1e-9, name + ": flip point off");
    detail += name + " " + fmt(threshold) + "; ";
  }
  if (o.pass) {
    o.detail = "flip within 0.01 m for " + detail;
  }
  return o;
}

// ---------------------------------------------------------------- 4

constexpr const char * kFivePointExample =
  "< 5 "
  "| 103.6957499292194 1.354088453458461 "
  "| 103.6956478 1.3540848 "
  "| 103.6956508073799 1.354060261353194 "
  "| 103.6957503367588 1.354064076671374 "
  "| 103.6957499292194 1.354088453458461 "
  ">";

CriterionResult format_round_trip()
{
  CriterionResult o;
  const test::TempDir dir("acceptance-format");
  Rng rng(404);
  for (int i = 0; i < 200 && o.pass; ++i) {
    const Trace t = test::random_trace(rng);
    const std::string tag = "trace " + std::to_string(i);
    const auto flat = make_layout(LayoutKind::flat, dir.path() / std::to_string(i), t.testcase_id, t.run_id);
    const auto dist = make_layout(LayoutKind::distributed, dir.path() / std::to_string(i), t.testcase_id, t.run_id);
    write_trace(t, flat);
    write_trace(t, dist);
    const auto a = parse_any(flat.root);
    const auto b = parse_any(dist.root);
    o.check(a.trace && *a.trace == t, tag + ": flat round trip differs");
    o.check(b.trace && *b.trace == t, tag + ": distributed round trip differs");
    o.check(a.trace && b.trace && *a.trace == *b.trace, tag + ": layouts disagree");
  }

  const auto raw = parse_position_array(kFivePointExample);
  o.check(raw.size() == 5 && parse_position_array(serialize_position_array(raw, true)) == raw,
          "five-point example does not round trip");
  const auto shape = parse_shape(kFivePointExample, Frame::wgs84, AxisOrder::lon_lat);
  o.check(parse_shape(serialize_shape(shape, AxisOrder::lon_lat), Frame::wgs84, AxisOrder::lon_lat) == shape,
          "five-point shape does not round trip");

  const geo::LocalFrame frame(test::kSiteOrigin);
  for (int i = 0; i < 1000 && o.pass; ++i) {
    const Polygon local = test::random_polygon(
      rng, {test::uniform(rng, -500, 500), test::uniform(rng, -500, 500)}, test::uniform(rng, 0.3, 10),
      test::uniform_int(rng, 3, 12));
    std::vector<GeoPosition> geo_vertices;
    std::vector<VcsPosition> vcs_vertices;
    for (const Vec2 p : local) {
      geo_vertices.push_back(frame.from_local(p));
      vcs_vertices.push_back({p.x, p.y, {}});
    }
    const BoundingShape g = make_shape(geo_vertices);
    const BoundingShape v = make_shape(vcs_vertices);
    for (const AxisOrder order : {AxisOrder::lat_lon, AxisOrder::lon_lat}) {
      o.check(parse_shape(serialize_shape(g, order), Frame::wgs84, order) == g, "polygon " + std::to_string(i) + " (WGS84)");
    }
    o.check(parse_shape(serialize_shape(v, AxisOrder::lat_lon), Frame::vcs, AxisOrder::lat_lon) == v,
            "polygon " + std::to_string(i) + " (VCS)");
  }
  if (o.pass) {
    o.detail = "200 traces in both layouts, five-point example, 1000 polygons";
  }
  return o;
}

// ---------------------------------------------------------------- 5

CriterionResult vcs_conformance()
{
  CriterionResult o;
  const Vec2 xy = geo::local_to_vcs({4.0, -5.0}, HeadingDeg(0.0));
  o.check(xy.x == -5.0 && xy.y == 4.0, "north-heading example gives (" + fmt(xy.x) + ", " + fmt(xy.y) + ")");
  const geo::LocalFrame site(test::kSiteOrigin);
  const VcsPosition v = geo::world_to_vcs(test::kSiteOrigin, HeadingDeg(0.0), site.from_local({4.0, -5.0}));
  o.check(std::abs(v.x + 5.0) < 1e-9 && std::abs(v.y - 4.0) < 1e-9, "example through WGS84 is off");

  Rng rng(505);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const GeoPosition vut{test::uniform(rng, -70, 70), test::uniform(rng, -180, 180), {}};
    const HeadingDeg heading(test::uniform(rng, 0, 360));
    const double r = test::uniform(rng, 0, 5000);
    const double a = test::uniform(rng, 0, 2 * std::numbers::pi);
    const GeoPosition p = geo::LocalFrame(vut).from_local({r * std::cos(a), r * std::sin(a)});
    const GeoPosition back = geo::vcs_to_world(vut, heading, geo::world_to_vcs(vut, heading, p));
    worst = std::max({worst, std::abs(back.lat - p.lat), std::abs(back.lon - p.lon)});
  }
  o.check(worst <= 1e-6, "round trip error " + std::to_string(worst) + " deg");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(-5, 4) exact; worst round trip %.2e deg over 10^4 points", worst);
    o.detail = buf;
  }
  return o;
}

// ---------------------------------------------------------------- 6

CriterionResult geometric_oracles()
{
  CriterionResult o;
  Rng rng(606);
  double worst_sep = 0.0;
  double worst_dir = 0.0;
  for (int i = 0; i < 500 && o.pass; ++i) {
    const Polygon a = test::random_polygon(rng, {0, 0}, test::uniform(rng, 0.5, 3), test::uniform_int(rng, 3, 9));
    const double r = test::uniform(rng, 0, 8);
    const double t = test::uniform(rng, 0, 2 * std::numbers::pi);
    const Polygon b = test::random_polygon(
      rng, {r * std::cos(t), r * std::sin(t)}, test::uniform(rng, 0.5, 3), test::uniform_int(rng, 3, 9));
    const std::string tag = "pair " + std::to_string(i);
    const double sep = std::abs(polygon::min_separation(a, b) - oracle::sampled_separation(a, b));
    worst_sep = std::max(worst_sep, sep);
    o.check(sep <= 1e-3, tag + ": separation off by " + fmt(sep));
    const auto d = polygon::directional_clearance(a, b);
    const double lat = oracle::sampled_gap(a, b, true);
    const double lon = oracle::sampled_gap(a, b, false);
    for (const auto & [got, want, axis] : {std::tuple{d.lateral, lat, "lateral"}, std::tuple{d.longitudinal, lon, "longitudinal"}}) {
      if (std::isinf(want) || std::isinf(got)) {
        o.check(std::isinf(want) && std::isinf(got), tag + ": " + axis + " applicability differs");
      } else {
        worst_dir = std::max(worst_dir, std::abs(got - want));
        o.check(std::abs(got - want) <= 1e-3, tag + ": " + axis + " off by " + fmt(std::abs(got - want)));
      }
    }
  }
  double worst_ntd = 0.0;
  int finite = 0;
  for (int i = 0; i < 200 && o.pass; ++i) {
    const Polygon vut = test::rectangle({0, 0}, 4.4, 1.8);
    const Polygon entity = test::random_polygon(rng, {test::uniform(rng, 5, 60), test::uniform(rng, -8, 8)}, 1.2, 5);
    const Vec2 vv{test::uniform(rng, 0, 14), 0};
    const Vec2 ev{test::uniform(rng, -3, 3), test::uniform(rng, -1.5, 1.5)};
    const double exact = clearance::nearest_temporal_distance(vut, vv, entity, ev);
    const double stepped = oracle::stepped_contact_time(vut, vv, entity, ev, clearance::kHorizonSeconds);
    const std::string tag = "setup " + std::to_string(i);
    if (std::isinf(stepped)) {
      o.check(std::isinf(exact) || exact > clearance::kHorizonSeconds - 0.01, tag + ": spurious contact");
    } else {
      ++finite;
      worst_ntd = std::max(worst_ntd, std::abs(exact - stepped));
      o.check(std::abs(exact - stepped) <= 0.01, tag + ": NTD off by " + fmt(std::abs(exact - stepped)) + " s");
    }
  }
  o.check(finite >= 20, "too few contact setups: " + std::to_string(finite));
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "worst separation %.1e m, directional %.1e m, NTD %.1e s (%d contacts)",
                  worst_sep, worst_dir, worst_ntd, finite);
    o.detail = buf;
  }
  return o;
}

// ---------------------------------------------------------------- 7

CriterionResult integrity_rules()
{
  CriterionResult o;
  const test::TempDir dir("acceptance-integrity");
  const synth::ScenarioSpec base;
  struct Fixture
  {
    std::string name;
    std::string code;
    int n_required;
    std::function<fs::path(const fs::path &)> build;
  };
  auto write = [](const Trace & t, const fs::path & at, LayoutKind kind) {
    const FileLayout layout = make_layout(kind, at, t.testcase_id, t.run_id);
    write_trace(t, layout);
    return layout.root;
  };
  const std::vector<Fixture> fixtures = {
    {"5 Hz sampling", "FrequencyTooLow", 1,
     [&](const fs::path & at) {
       synth::ScenarioSpec slow = base;
       slow.sample_rate = 5.0;
       return write(synth::synthesize(slow, synth::Case::case3, 1), at, LayoutKind::flat);
     }},
    {"entity step off the VUT clock", "OrphanStep", 1,
     [&](const fs::path & at) {
       Trace t = synth::synthesize(base, synth::Case::case3, 1);
       t.actors.begin()->second.back().step = 999999;
       return write(t, at, LayoutKind::distributed);
     }},
    {"time going backwards", "NonMonotoneTime", 1,
     [&](const fs::path & at) {
       Trace t = synth::synthesize(base, synth::Case::case3, 1);
       t.vut[10].time = t.vut[8].time;
       return write(t, at, LayoutKind::flat);
     }},
    {"9 of 10 runs", "InsufficientRuns", 10,
     [&](const fs::path & at) {
       synth::ScenarioSpec nine = base;
       nine.runs = 9;
       for (const auto & t : synth::synthesize_runs(nine, synth::Case::case3)) {
         write(t, at, LayoutKind::flat);
       }
       return at;
     }},
    {"misnamed file", "InvalidFileName", 1,
     [&](const fs::path & at) {
       const fs::path good = write(synth::synthesize(base, synth::Case::case3, 1), at, LayoutKind::flat);
       const fs::path bad = at / "run1.csv";
       fs::rename(good, bad);
       return bad;
     }},
  };
  std::string detail;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto & f = fixtures[i];
    const fs::path input = f.build(dir.path() / ("fixture" + std::to_string(i)));
    app::Options options;
    options.out = dir.path() / ("report" + std::to_string(i));
    options.n_required = f.n_required;
    std::ostringstream out;
    std::ostringstream err;
    const int code = app::cmd_validate({input}, options, out, err);
    std::string reports = out.str() + err.str();
    if (fs::exists(options.out)) {
      for (const auto & entry : fs::directory_iterator(options.out)) {
        std::ifstream in(entry.path());
        reports += std::string(std::istreambuf_iterator<char>(in), {});
      }
    }
    o.check(code != 0, f.name + ": exit code 0");
    o.check(reports.find(f.code) != std::string::npos, f.name + ": no " + f.code + " finding");
    detail += f.code + " (exit " + std::to_string(code) + "); ";
  }
  if (o.pass) {
    o.detail = detail;
  }
  return o;
}

// ---------------------------------------------------------------- 8

CriterionResult fidelity_check()
{
  CriterionResult o;
  const Trace reference = synth::synthesize(synth::ScenarioSpec{}, synth::Case::case3, 1);
  const auto self = fidelity::compare(reference, reference);
  o.check(self.position_rmse == 0.0 && self.speed_rmse == 0.0 && self.heading_rmse == 0.0,
          "identical traces give non-zero RMSE");
  double lo = 1e9;
  double hi = 0.0;
  double worst_offset = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Trace twin = synth::perturb(reference, 0.1, 0.0, 0.5, seed);
    const auto r = fidelity::compare(twin, reference);
    // The twin replays reference content 0.5 s late.
    worst_offset = std::max(worst_offset, std::abs(r.offset + 0.5));
    lo = std::min(lo, r.position_rmse);
    hi = std::max(hi, r.position_rmse);
  }
  o.check(worst_offset <= 0.05, "alignment off by " + fmt(worst_offset) + " s");
  o.check(lo >= 0.08 && hi <= 0.20, "position RMSE range [" + fmt(lo) + ", " + fmt(hi) + "]");
  std::string sizes;
  for (const int n : {4, 10, 40}) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
      ids.push_back("TC-" + std::to_string(i));
    }
    const auto subset = fidelity::select_recalibration_subset(ids);
    const double share = static_cast<double>(subset.size()) / n;
    o.check(share >= 0.20 && share <= 0.25, "subset of " + std::to_string(subset.size()) + " for N=" + std::to_string(n));
    sizes += std::to_string(subset.size()) + "/" + std::to_string(n) + " ";
  }
  if (o.pass) {
    o.detail = "offset error <= " + fmt(worst_offset) + " s, position RMSE " + fmt(lo) + ".." + fmt(hi) +
               " m, subsets " + sizes;
  }
  return o;
}

}  // namespace
}  // namespace vista

int main()
{
  using vista::CriterionResult;
  const std::pair<const char *, CriterionResult (*)()> criteria[] = {
    {"worked-case reproduction", vista::worked_case_reproduction},
    {"threshold table conformance", vista::threshold_table},
    {"kinematic rules", vista::kinematic_rules},
    {"format round trip", vista::format_round_trip},
    {"VCS conformance", vista::vcs_conformance},
    {"geometric oracle equivalence", vista::geometric_oracles},
    {"integrity rules", vista::integrity_rules},
    {"fidelity", vista::fidelity_check},
  };
  int failures = 0;
  int index = 0;
  for (const auto & [name, run] : criteria) {
    ++index;
    CriterionResult o;
    try {
      o = run();
    } catch (const std::exception & e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) {
      o.detail.pop_back();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
