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

#include "vista/app.hpp"

#include "vista/csv.hpp"
#include "vista/error.hpp"
#include "vista/fidelity.hpp"
#include "vista/integrity.hpp"
#include "vista/reader.hpp"
#include "vista/report.hpp"
#include "vista/rules.hpp"
#include "vista/schema.hpp"
#include "vista/writer.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

namespace vista::app
{

namespace fs = std::filesystem;

namespace
{

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is handled
// exactly once; callers write results into per-index slots.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> & fn)
{
  const auto workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        fn(i);
      }
    });
  }
}

void write_file(const fs::path & path, const std::string & content)
{
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << content;
  if (!os) {
    throw Error(Errc::io_failure, "cannot write " + path.string());
  }
}

std::string lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_run_folder(const fs::path & dir)
{
  std::error_code ec;
  const std::string vut = lower(std::string(role::kVut));
  for (const auto & entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file(ec) && lower(entry.path().filename().string()) == vut) {
      return true;
    }
  }
  return false;
}

struct Parsed
{
  fs::path path;
  ParseResult result;
  /// Report file stem: the canonical run name when known.
  std::string stem;
};

std::string run_stem(const Trace & trace)
{
  return folder_name(trace.testcase_id, trace.run_id);
}

std::vector<Parsed> parse_inputs(const std::vector<fs::path> & inputs, const Options & options)
{
  std::vector<Parsed> parsed(inputs.size());
  parallel_for(inputs.size(), options.jobs, [&](std::size_t i) {
    Parsed & p = parsed[i];
    p.path = inputs[i];
    p.result = parse_any(inputs[i], options.layout, ParseOptions{options.axis_order});
    if (p.result.trace) {
      const auto freq = check_frequency(*p.result.trace, options.f_min);
      p.result.report.append(freq);
      if (p.result.report.has_errors()) {
        p.result.trace.reset();
      }
    }
    p.stem = p.result.trace ? run_stem(*p.result.trace) : inputs[i].filename().string();
    if (p.stem.empty()) {
      p.stem = "input" + std::to_string(i + 1);
    }
  });
  return parsed;
}

bool has_io_failure(const Parsed & p)
{
  return p.result.report.contains(FindingCode::io_failure);
}

std::string read_config(const fs::path & path)
{
  return csv::read_text(path);
}

std::string source_label(const Parsed & p)
{
  return p.path.string();
}

// Per-test-case run-set findings over the successfully parsed runs.
std::map<std::string, IntegrityReport> run_set_reports(const std::vector<Parsed> & parsed, int n_required)
{
  std::map<std::string, std::vector<RunIdentity>> groups;
  for (const auto & p : parsed) {
    if (p.result.trace) {
      groups[p.result.trace->testcase_id].push_back({p.result.trace->testcase_id, p.result.trace->run_id});
    }
  }
  std::map<std::string, IntegrityReport> out;
  for (const auto & [id, runs] : groups) {
    out[id].append(check_run_set(runs, n_required));
  }
  return out;
}

template <typename Fn>
int guarded(std::ostream & err, Fn && fn)
{
  try {
    return fn();
  } catch (const Error & e) {
    err << "vista: " << e.what() << "\n";
  } catch (const std::exception & e) {
    err << "vista: " << e.what() << "\n";
  }
  return kOperationalError;
}

double get_number(const nlohmann::json & value, const std::string & key)
{
  if (!value.is_number()) {
    throw Error(Errc::invalid_argument, "scenario key '" + key + "' must be a number");
  }
  return value.get<double>();
}

}  // namespace

std::vector<fs::path> expand_inputs(const std::vector<fs::path> & inputs, std::optional<LayoutKind> hint)
{
  std::vector<fs::path> out;
  for (const auto & input : inputs) {
    std::error_code ec;
    if (hint || !fs::is_directory(input, ec) || is_run_folder(input)) {
      out.push_back(input);
      continue;
    }
    std::vector<fs::path> runs;
    for (const auto & entry : fs::directory_iterator(input, ec)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file(ec) ? parse_flat_name(name).has_value() : parse_folder_name(name).has_value()) {
        runs.push_back(entry.path());
      }
    }
    if (runs.empty()) {
      out.push_back(input);
      continue;
    }
    std::sort(runs.begin(), runs.end());
    out.insert(out.end(), runs.begin(), runs.end());
  }
  return out;
}

int cmd_validate(
  const std::vector<fs::path> & inputs, const Options & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    if (inputs.empty()) {
      err << "vista: validate needs at least one input\n";
      return static_cast<int>(kOperationalError);
    }
    const auto parsed = parse_inputs(expand_inputs(inputs, options.layout), options);
    bool io_failed = false;
    bool any_error = false;
    for (const auto & p : parsed) {
      io_failed = io_failed || has_io_failure(p);
      any_error = any_error || p.result.report.has_errors();
      write_file(options.out / (p.stem + ".integrity.json"), report::integrity_json(source_label(p), p.result.report));
      write_file(options.out / (p.stem + ".integrity.txt"), report::integrity_text(source_label(p), p.result.report));
      out << report::integrity_text(source_label(p), p.result.report);
    }
    for (const auto & [id, report] : run_set_reports(parsed, options.n_required)) {
      any_error = any_error || report.has_errors();
      const std::string label = id + " run set";
      write_file(options.out / (id + ".runs.json"), report::integrity_json(label, report));
      out << report::integrity_text(label, report);
    }
    if (io_failed) {
      return static_cast<int>(kOperationalError);
    }
    return static_cast<int>(any_error ? kFailure : kSuccess);
  });
}

int cmd_evaluate(
  const std::vector<fs::path> & inputs, const Options & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    if (inputs.empty()) {
      err << "vista: evaluate needs at least one input\n";
      return static_cast<int>(kOperationalError);
    }
    const auto parsed = parse_inputs(expand_inputs(inputs, options.layout), options);
    bool invalid = false;
    for (const auto & p : parsed) {
      if (!p.result.trace) {
        invalid = true;
        err << report::integrity_text(source_label(p), p.result.report);
      }
    }
    if (invalid) {
      err << "vista: inputs failed validation\n";
      return static_cast<int>(kOperationalError);
    }

    const std::string rules_text = options.rules.empty() ? std::string() : read_config(options.rules);
    std::map<std::string, std::pair<rules::RuleSet, std::vector<Finding>>> rule_sets;
    for (const auto & p : parsed) {
      const std::string & id = p.result.trace->testcase_id;
      if (rule_sets.contains(id)) {
        continue;
      }
      std::vector<Finding> log;
      rules::RuleSet rs = rules_text.empty() ? rules::RuleSet{} : rules::parse_rule_set(rules_text, id, &log);
      rule_sets.emplace(id, std::make_pair(std::move(rs), std::move(log)));
    }

    std::vector<rules::RunEvaluation> evaluations(parsed.size());
    std::vector<std::string> failures(parsed.size());
    parallel_for(parsed.size(), options.jobs, [&](std::size_t i) {
      const Trace & trace = *parsed[i].result.trace;
      try {
        const auto & [rs, log] = rule_sets.at(trace.testcase_id);
        auto eval = rules::evaluate_run(trace, rs);
        eval.findings.insert(eval.findings.begin(), log.begin(), log.end());
        const std::string & stem = parsed[i].stem;
        write_file(options.out / (stem + ".evaluation.json"), report::evaluation_json(eval));
        write_file(options.out / (stem + ".evaluation.txt"), report::evaluation_text(eval));
        write_file(options.out / (stem + ".clearance.csv"), report::clearance_csv(eval));
        write_file(options.out / (stem + ".kinematics.csv"), report::kinematics_csv(trace));
        write_file(options.out / (stem + ".trajectory.csv"), report::trajectory_csv(trace));
        evaluations[i] = std::move(eval);
      } catch (const std::exception & e) {
        failures[i] = parsed[i].path.string() + ": " + e.what();
      }
    });
    for (const auto & f : failures) {
      if (!f.empty()) {
        err << "vista: " << f << "\n";
        return static_cast<int>(kOperationalError);
      }
    }

    std::map<std::string, std::vector<rules::RunEvaluation>> by_case;
    for (auto & e : evaluations) {
      by_case[e.testcase_id].push_back(std::move(e));
    }
    bool all_pass = true;
    for (const auto & [id, runs] : by_case) {
      const auto summary = rules::aggregate(runs, options.n_required);
      all_pass = all_pass && summary.pass;
      write_file(options.out / (id + ".summary.json"), report::summary_json(summary));
      write_file(options.out / (id + ".summary.txt"), report::summary_text(summary));
      out << report::summary_text(summary);
    }
    return static_cast<int>(all_pass ? kSuccess : kFailure);
  });
}

int cmd_report(
  const std::vector<fs::path> & inputs, const Options & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    if (inputs.empty()) {
      err << "vista: report needs at least one input\n";
      return static_cast<int>(kOperationalError);
    }
    const auto parsed = parse_inputs(expand_inputs(inputs, options.layout), options);
    for (const auto & p : parsed) {
      if (!p.result.trace) {
        err << report::integrity_text(source_label(p), p.result.report);
        return static_cast<int>(kOperationalError);
      }
    }
    for (const auto & p : parsed) {
      const Trace & trace = *p.result.trace;
      rules::RunEvaluation series_only;
      series_only.testcase_id = trace.testcase_id;
      series_only.run_id = trace.run_id;
      const rules::RuleSet defaults;
      for (const auto & [id, records] : trace.actors) {
        series_only.series.push_back(clearance::clearance_series(trace, id, defaults.vehicle));
      }
      for (const auto & [id, records] : trace.obstacles) {
        series_only.series.push_back(clearance::clearance_series(trace, id, defaults.vehicle));
      }
      write_file(options.out / (p.stem + ".clearance.csv"), report::clearance_csv(series_only));
      write_file(options.out / (p.stem + ".kinematics.csv"), report::kinematics_csv(trace));
      write_file(options.out / (p.stem + ".trajectory.csv"), report::trajectory_csv(trace));
      out << (options.out / p.stem).string() << ".{clearance,kinematics,trajectory}.csv\n";
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_fidelity(
  const fs::path & virtual_path, const fs::path & reference_path, std::optional<double> offset,
  const Options & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    const auto parsed = parse_inputs({virtual_path, reference_path}, options);
    for (const auto & p : parsed) {
      if (!p.result.trace) {
        err << report::integrity_text(source_label(p), p.result.report);
        return static_cast<int>(kOperationalError);
      }
    }
    const fidelity::Tolerances tolerances = options.tolerances.empty()
                                              ? fidelity::Tolerances{}
                                              : fidelity::parse_tolerances(read_config(options.tolerances));
    const auto result =
      fidelity::compare(*parsed[0].result.trace, *parsed[1].result.trace, tolerances, offset);
    write_file(options.out / "fidelity.json", report::fidelity_json(result, tolerances));
    write_file(options.out / "fidelity.txt", report::fidelity_text(result, tolerances));
    out << report::fidelity_text(result, tolerances);
    return static_cast<int>(result.pass ? kSuccess : kFailure);
  });
}

int cmd_generate(
  const GenerateRequest & request, const Options & options, std::ostream & out, std::ostream & err)
{
  return guarded(err, [&] {
    synth::ScenarioSpec spec =
      request.spec_file.empty() ? synth::ScenarioSpec{} : parse_scenario_spec(read_config(request.spec_file));
    if (request.runs) {
      spec.runs = *request.runs;
    }
    if (request.target) {
      spec.target_min_lateral_clearance = request.target;
    }
    if (options.seed) {
      spec.seed = *options.seed;
    }
    if (spec.runs < 1 || spec.runs > 999) {
      throw Error(Errc::infeasible_spec, "run count must lie in 1..999");
    }
    const LayoutKind kind = options.layout.value_or(LayoutKind::flat);
    const auto n = static_cast<std::size_t>(spec.runs);
    std::vector<std::string> written(n);
    std::vector<std::string> failures(n);
    parallel_for(n, options.jobs, [&](std::size_t i) {
      try {
        const int run_id = static_cast<int>(i) + 1;
        const Trace trace = synth::synthesize(spec, request.scenario_case, run_id);
        const FileLayout layout = make_layout(kind, options.out, spec.testcase_id, run_id);
        write_trace(trace, layout, options.axis_order);
        written[i] = layout.root.string();
      } catch (const Error & e) {
        failures[i] = e.what();
      }
    });
    for (const auto & f : failures) {
      if (!f.empty()) {
        err << "vista: " << f << "\n";
        return static_cast<int>(kOperationalError);
      }
    }
    for (const auto & w : written) {
      out << w << "\n";
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_schema(std::ostream & out)
{
  out << schema::to_json_text();
  return kSuccess;
}

synth::ScenarioSpec parse_scenario_spec(std::string_view json_text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception & e) {
    throw Error(Errc::invalid_argument, std::string("scenario file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(Errc::invalid_argument, "scenario file must hold a JSON object");
  }
  synth::ScenarioSpec spec;
  const std::map<std::string, double *> numbers{
    {"road_heading", &spec.road_heading},
    {"lane_width", &spec.lane_width},
    {"tsv_length", &spec.tsv_length},
    {"tsv_width", &spec.tsv_width},
    {"tsv_kerb_offset", &spec.tsv_kerb_offset},
    {"tsv_station", &spec.tsv_station},
    {"speed_cap", &spec.speed_cap},
    {"cruise_speed", &spec.cruise_speed},
    {"overtake_speed", &spec.overtake_speed},
    {"decel_magnitude", &spec.decel_magnitude},
    {"sample_rate", &spec.sample_rate},
  };
  for (const auto & [key, value] : doc.items()) {
    if (const auto it = numbers.find(key); it != numbers.end()) {
      *it->second = get_number(value, key);
    } else if (key == "testcase_id" && value.is_string()) {
      spec.testcase_id = value.get<std::string>();
    } else if (key == "target_min_lateral_clearance") {
      spec.target_min_lateral_clearance = get_number(value, key);
    } else if (key == "runs" && value.is_number_integer()) {
      spec.runs = value.get<int>();
    } else if (key == "seed" && value.is_number_unsigned()) {
      spec.seed = value.get<std::uint64_t>();
    } else if (key == "origin" && value.is_object() && value.contains("lat") && value.contains("lon")) {
      spec.origin.lat = get_number(value.at("lat"), "origin.lat");
      spec.origin.lon = get_number(value.at("lon"), "origin.lon");
    } else {
      throw Error(Errc::invalid_argument, "unknown or mistyped scenario key '" + key + "'");
    }
  }
  return spec;
}

}  // namespace vista::app
